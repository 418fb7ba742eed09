#include "qac/search.hpp"

#include <bit>
#include <sstream>

#include "qac/error.hpp"

namespace qac {

namespace {

std::size_t index_width(std::size_t n) {
  std::size_t w = static_cast<std::size_t>(std::bit_width(n > 0 ? n - 1 : 0));
  return w < 1 ? 1 : w;
}

std::size_t count_width(std::size_t n) {
  return static_cast<std::size_t>(std::bit_width(n));  // holds 0..N
}

Polynomial lit_product(const Lit& a, const Lit& b) { return a.to_poly() * b.to_poly(); }

Polynomial selected_sum(const std::vector<Lit>& match, const std::vector<Lit>& value) {
  if (match.size() != value.size()) {
    throw InvalidArgument("matcher flag lists differ in length: " +
                          std::to_string(match.size()) + " vs " + std::to_string(value.size()));
  }
  if (match.empty()) throw InvalidArgument("matcher flag lists are empty");
  Polynomial s;
  for (std::size_t i = 0; i < match.size(); ++i) s += lit_product(match[i], value[i]);
  return s;
}

std::uint64_t parse_u64_field(const std::string& field, const std::string& what) {
  try {
    std::size_t pos = 0;
    std::uint64_t v = std::stoull(field, &pos, 10);
    if (pos != field.size()) throw InvalidArgument("");
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("malformed " + what + " '" + field + "' in predicate");
  }
}

}  // namespace

Predicate parse_predicate(const std::string& spec) {
  Predicate p;
  std::stringstream ss(spec);
  std::string leaf_spec;
  while (std::getline(ss, leaf_spec, ',')) {
    std::stringstream ls(leaf_spec);
    std::string off_s, width_s, op_s, const_s;
    if (!std::getline(ls, off_s, ':') || !std::getline(ls, width_s, ':') ||
        !std::getline(ls, op_s, ':') || !std::getline(ls, const_s)) {
      throw InvalidArgument("malformed predicate leaf '" + leaf_spec +
                            "'; expected offset:width:op:constant");
    }
    PredicateLeaf leaf;
    leaf.offset = parse_u64_field(off_s, "offset");
    leaf.width = parse_u64_field(width_s, "width");
    leaf.constant = parse_u64_field(const_s, "constant");
    if (op_s == "eq") {
      leaf.op = PredicateOp::kEqConst;
    } else if (op_s == "gt") {
      leaf.op = PredicateOp::kGtConst;
    } else if (op_s == "lt") {
      leaf.op = PredicateOp::kLtConst;
    } else {
      throw InvalidArgument("unknown predicate op '" + op_s + "'; expected eq, gt, or lt");
    }
    p.leaves.push_back(leaf);
  }
  if (p.leaves.empty()) throw InvalidArgument("predicate has no comparisons");
  return p;
}

std::string predicate_to_string(const Predicate& p) {
  std::string out;
  for (const PredicateLeaf& leaf : p.leaves) {
    if (!out.empty()) out += ',';
    out += std::to_string(leaf.offset) + ':' + std::to_string(leaf.width) + ':';
    switch (leaf.op) {
      case PredicateOp::kEqConst: out += "eq"; break;
      case PredicateOp::kGtConst: out += "gt"; break;
      case PredicateOp::kLtConst: out += "lt"; break;
    }
    out += ':' + std::to_string(leaf.constant);
  }
  return out;
}

std::vector<GadgetResult> build_index_matchers(const QuantumInt& index, std::size_t n,
                                               Registry& reg) {
  if (index.width() < 64 && (std::uint64_t{1} << index.width()) < n) {
    throw InvalidArgument("index of width " + std::to_string(index.width()) +
                          " cannot address " + std::to_string(n) + " elements");
  }
  std::vector<GadgetResult> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(int_equality_const(index, i, reg, "I"));
  }
  return out;
}

std::vector<GadgetResult> build_value_matchers(const ArraySpec& array, const QuantumInt& x,
                                               Registry& reg) {
  if (x.width() != array.element_width) {
    throw InvalidArgument("target width " + std::to_string(x.width()) +
                          " differs from element width " + std::to_string(array.element_width));
  }
  std::vector<GadgetResult> out;
  out.reserve(array.n_elements);
  for (const QuantumInt& element : array.elements) {
    out.push_back(int_equality(element, x, reg, "V"));
  }
  return out;
}

std::vector<GadgetResult> build_predicate_matchers(const ArraySpec& array, const Predicate& p,
                                                   Registry& reg) {
  if (p.leaves.empty()) throw InvalidArgument("predicate has no comparisons");
  for (const PredicateLeaf& leaf : p.leaves) {
    if (leaf.width < 1 || leaf.offset + leaf.width > array.element_width) {
      throw InvalidArgument("predicate field [" + std::to_string(leaf.offset) + ", " +
                            std::to_string(leaf.offset + leaf.width) +
                            ") outside element width " + std::to_string(array.element_width));
    }
  }
  std::vector<GadgetResult> out;
  out.reserve(array.n_elements);
  for (const QuantumInt& element : array.elements) {
    GadgetComposer comp;
    std::vector<Lit> flags;
    flags.reserve(p.leaves.size());
    for (const PredicateLeaf& leaf : p.leaves) {
      QuantumInt field = element.field(leaf.offset, leaf.width);
      switch (leaf.op) {
        case PredicateOp::kEqConst:
          flags.push_back(comp.absorb(int_equality_const(field, leaf.constant, reg, "P")));
          break;
        case PredicateOp::kGtConst:
          flags.push_back(comp.absorb(
              int_greater_lits(field.lits(), constant_lits(leaf.constant, leaf.width), reg, "P")));
          break;
        case PredicateOp::kLtConst:
          flags.push_back(comp.absorb(
              int_greater_lits(constant_lits(leaf.constant, leaf.width), field.lits(), reg, "P")));
          break;
      }
    }
    out.push_back(comp.finish(and_tree(flags, reg, "P")));
  }
  return out;
}

Polynomial h_search_basic(const std::vector<Lit>& match, const std::vector<Lit>& value) {
  return (Polynomial(1) - selected_sum(match, value)).squared();
}

FailureTerm h_search_with_failure(const std::vector<Lit>& match, const std::vector<Lit>& value,
                                  Registry& reg) {
  Polynomial s = selected_sum(match, value);
  FailureTerm term{Polynomial{}, reg.fresh_var("nf", VarRole::kInput, "nf")};
  Polynomial nf = Polynomial::variable(term.not_found);
  term.h = (Polynomial(1) - nf - s).squared() + Rat(1, 2) * nf;
  return term;
}

OrVariantTerm h_search_or_variant(const std::vector<Lit>& match, const std::vector<Lit>& value,
                                  Registry& reg) {
  if (match.size() != value.size()) {
    throw InvalidArgument("matcher flag lists differ in length: " +
                          std::to_string(match.size()) + " vs " + std::to_string(value.size()));
  }
  if (match.empty()) throw InvalidArgument("matcher flag lists are empty");
  OrVariantTerm term{};
  GadgetComposer comp;
  for (std::size_t i = 0; i < match.size(); ++i) {
    term.products.push_back(comp.absorb(and_pair(match[i], value[i], reg, "z")));
  }
  GadgetResult tree = comp.finish(or_tree(term.products, reg, "found"));
  term.gadget_h = std::move(tree.hamiltonian);
  term.found = tree.output;
  term.ancillas = std::move(tree.ancillas);
  term.not_found = reg.fresh_var("nf", VarRole::kInput, "nf");
  Polynomial nf = Polynomial::variable(term.not_found);
  term.h = (Polynomial(1) - nf - term.found.to_poly()).squared() + Rat(1, 2) * nf;
  return term;
}

Polynomial h_count_matches(const std::vector<Lit>& value, const QuantumInt& count) {
  if (value.empty()) throw InvalidArgument("matcher flag list is empty");
  if (count.width() < count_width(value.size())) {
    throw InvalidArgument("count register of width " + std::to_string(count.width()) +
                          " cannot hold matches up to " + std::to_string(value.size()));
  }
  Polynomial s;
  for (const Lit& v : value) s += v.to_poly();
  return (count.value_poly() - s).squared();
}

Polynomial h_array_assign(const ArraySpec& array, const QuantumInt& index, const QuantumInt& x,
                          Registry& reg) {
  if (x.width() != array.element_width) {
    throw InvalidArgument("target width " + std::to_string(x.width()) +
                          " differs from element width " + std::to_string(array.element_width));
  }
  std::vector<GadgetResult> matchers = build_index_matchers(index, array.n_elements, reg);
  Polynomial h;
  Polynomial match_sum;
  for (std::size_t i = 0; i < array.n_elements; ++i) {
    h += matchers[i].hamiltonian;
    match_sum += matchers[i].output.to_poly();
    h += matchers[i].output.to_poly() * bit_assign_equal(array.elements[i], x);
  }
  h += (Polynomial(1) - match_sum).squared();
  return h;
}

Program build_search(const SearchBuildOptions& opt) {
  if (opt.n_elements < 1) throw InvalidArgument("search needs at least one element");
  if (opt.element_width < 1) throw InvalidArgument("element width must be >= 1");
  if (opt.predicate && opt.target) {
    throw InvalidArgument("predicate and target are mutually exclusive");
  }

  Program prog;
  prog.kind = ProgramKind::kSearch;
  prog.variant = opt.variant;
  prog.n_elements = opt.n_elements;
  prog.element_width = opt.element_width;
  prog.values = opt.values;
  prog.target = opt.target;
  Registry& reg = prog.registry;

  ArraySpec array = ArraySpec::alloc(reg, opt.n_elements, opt.element_width, "A");
  if (opt.values) {
    if (opt.values->size() != opt.n_elements) {
      throw InvalidArgument("expected " + std::to_string(opt.n_elements) + " values, got " +
                            std::to_string(opt.values->size()));
    }
    for (std::size_t i = 0; i < opt.values->size(); ++i) array.known_values[i] = (*opt.values)[i];
  }

  std::optional<Predicate> pred;
  if (opt.predicate) {
    pred = parse_predicate(*opt.predicate);
    prog.predicate_spec = predicate_to_string(*pred);
  }
  std::optional<QuantumInt> x;
  if (!pred) x = QuantumInt::alloc(reg, "x", opt.element_width, VarRole::kInput, "x");

  std::vector<GadgetResult> value_matchers =
      pred ? build_predicate_matchers(array, *pred, reg) : build_value_matchers(array, *x, reg);
  Polynomial matcher_h;
  std::vector<Lit> value_flags;
  for (const GadgetResult& g : value_matchers) {
    matcher_h += g.hamiltonian;
    value_flags.push_back(g.output);
  }
  prog.decode.flag_lists["V"] = value_flags;

  switch (opt.variant) {
    case SearchVariant::kSummation: {
      QuantumInt index =
          QuantumInt::alloc(reg, "n", index_width(opt.n_elements), VarRole::kInput, "n");
      std::vector<GadgetResult> index_matchers = build_index_matchers(index, opt.n_elements, reg);
      std::vector<Lit> match_flags;
      for (const GadgetResult& g : index_matchers) {
        matcher_h += g.hamiltonian;
        match_flags.push_back(g.output);
      }
      FailureTerm term = h_search_with_failure(match_flags, value_flags, reg);
      prog.logic = Rat(kLogicPenaltyScale) * matcher_h;
      prog.selector = selected_sum(match_flags, value_flags);
      prog.hamiltonian = prog.logic + term.h;
      prog.decode.ints["n"] = index;
      prog.decode.flags.insert({"not_found", Lit(term.not_found)});
      prog.decode.flag_lists["I"] = match_flags;
      break;
    }
    case SearchVariant::kLogicalOr: {
      QuantumInt index =
          QuantumInt::alloc(reg, "n", index_width(opt.n_elements), VarRole::kInput, "n");
      std::vector<GadgetResult> index_matchers = build_index_matchers(index, opt.n_elements, reg);
      std::vector<Lit> match_flags;
      for (const GadgetResult& g : index_matchers) {
        matcher_h += g.hamiltonian;
        match_flags.push_back(g.output);
      }
      OrVariantTerm term = h_search_or_variant(match_flags, value_flags, reg);
      prog.logic = Rat(kLogicPenaltyScale) * (matcher_h + term.gadget_h);
      prog.selector = term.found.to_poly();
      prog.hamiltonian = prog.logic + term.h;
      prog.decode.ints["n"] = index;
      prog.decode.flags.insert({"not_found", Lit(term.not_found)});
      prog.decode.flags.insert({"found", term.found});
      prog.decode.flag_lists["I"] = match_flags;
      break;
    }
    case SearchVariant::kCount: {
      QuantumInt count =
          QuantumInt::alloc(reg, "count", count_width(opt.n_elements), VarRole::kInput, "count");
      prog.logic = Rat(kLogicPenaltyScale) * matcher_h;
      Polynomial s;
      for (const Lit& v : value_flags) s += v.to_poly();
      prog.selector = s;
      prog.hamiltonian = prog.logic + h_count_matches(value_flags, count);
      prog.decode.ints["count"] = count;
      break;
    }
  }

  for (std::size_t i = 0; i < array.n_elements; ++i) {
    prog.decode.ints["A[" + std::to_string(i) + "]"] = array.elements[i];
  }
  if (x) prog.decode.ints["x"] = *x;

  prog.build_clamp = array.clamp_known();
  if (opt.target) {
    Assignment bits = x->clamp_to(*opt.target);
    for (const auto& [v, bit] : bits.bits()) prog.build_clamp.set(v, bit);
  }
  prog.qubo = reduce_to_quadratic(prog.hamiltonian.clamp(prog.build_clamp), reg);
  return prog;
}

}  // namespace qac
