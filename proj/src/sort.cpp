#include "qac/sort.hpp"

#include <string>

#include "qac/error.hpp"

namespace qac {

namespace {

void check_square(const std::vector<std::vector<VarId>>& mapping) {
  if (mapping.empty()) throw InvalidArgument("mapping matrix is empty");
  for (const auto& row : mapping) {
    if (row.size() != mapping.size()) {
      throw InvalidArgument("mapping matrix is not square: " + std::to_string(mapping.size()) +
                            " rows, a row of " + std::to_string(row.size()) + " columns");
    }
  }
}

}  // namespace

Polynomial h_mapping(const std::vector<std::vector<VarId>>& mapping) {
  check_square(mapping);
  const std::size_t n = mapping.size();
  Polynomial h;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial row_sum;
    for (std::size_t j = 0; j < n; ++j) row_sum += Polynomial::variable(mapping[i][j]);
    h += (Polynomial(1) - row_sum).squared();
  }
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial col_sum;
    for (std::size_t i = 0; i < n; ++i) col_sum += Polynomial::variable(mapping[i][j]);
    h += (Polynomial(1) - col_sum).squared();
  }
  return h;
}

AssignTerm h_assign(const std::vector<std::vector<VarId>>& mapping, const ArraySpec& a,
                    const ArraySpec& b, Registry& reg) {
  check_square(mapping);
  if (a.n_elements != mapping.size() || b.n_elements != mapping.size()) {
    throw InvalidArgument("mapping is " + std::to_string(mapping.size()) + "x" +
                          std::to_string(mapping.size()) + " but arrays have " +
                          std::to_string(a.n_elements) + " and " + std::to_string(b.n_elements) +
                          " elements");
  }
  if (a.element_width != b.element_width) {
    throw InvalidArgument("source width " + std::to_string(a.element_width) +
                          " differs from destination width " + std::to_string(b.element_width));
  }
  const std::size_t n = mapping.size();
  const std::size_t width = a.element_width;
  AssignTerm term;
  term.copy.resize(n);
  // M_ij * (A_l + B_l - 2 A_l B_l) per bit, with the cubic piece routed
  // through z = A_l * B_l at penalty weight 3 (1 + |coeff| of the one
  // rewritten term). Emitted directly so z always pairs the two data bits.
  const Rat penalty = 3;
  for (std::size_t i = 0; i < n; ++i) {
    term.copy[i].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      term.copy[i][j].reserve(width);
      const Monomial m(mapping[i][j]);
      for (std::size_t l = 0; l < width; ++l) {
        const VarId al = a.elements[i].bits[l];
        const VarId bl = b.elements[j].bits[l];
        const VarId z = reg.fresh_var("copy." + std::to_string(i) + "." + std::to_string(j) + "." +
                                          std::to_string(l),
                                      VarRole::kAncilla, "copy");
        term.copy[i][j].push_back(z);
        term.h.add_term(Monomial::product(m, Monomial(al)), 1);
        term.h.add_term(Monomial::product(m, Monomial(bl)), 1);
        term.h.add_term(Monomial::product(m, Monomial(z)), -2);
        term.h.add_term(Monomial({al, bl}), penalty);
        term.h.add_term(Monomial({al, z}), -2 * penalty);
        term.h.add_term(Monomial({bl, z}), -2 * penalty);
        term.h.add_term(Monomial(z), 3 * penalty);
      }
    }
  }
  return term;
}

Polynomial h_ordering(const ArraySpec& b, Registry& reg) {
  if (b.n_elements < 2) throw InvalidArgument("ordering needs at least two elements");
  Polynomial h;
  for (std::size_t i = 0; i + 1 < b.n_elements; ++i) {
    h += int_leq_constraint(b.elements[i], b.elements[i + 1], reg, "ord");
  }
  return h;
}

PermutationDecode decode_permutation(const Assignment& a, const Program& prog) {
  const auto& mapping = prog.decode.matrix;
  if (mapping.empty()) throw InvalidArgument("program has no mapping matrix to decode");
  const std::size_t n = mapping.size();
  PermutationDecode out;
  out.perm.assign(n, 0);
  std::vector<std::size_t> row_uses(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!a.at(mapping[i][j])) continue;
      ++hits;
      out.perm[j] = i;
      ++row_uses[i];
    }
    if (hits != 1) {
      throw InconsistentState("mapping column " + std::to_string(j) + " selects " +
                              std::to_string(hits) + " sources; not a permutation");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (row_uses[i] != 1) {
      throw InconsistentState("mapping row " + std::to_string(i) + " feeds " +
                              std::to_string(row_uses[i]) + " destinations; not a permutation");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.source_values.push_back(prog.decode.ints.at("A[" + std::to_string(i) + "]").decode(a));
  }
  for (std::size_t j = 0; j < n; ++j) {
    out.sorted_values.push_back(prog.decode.ints.at("B[" + std::to_string(j) + "]").decode(a));
  }
  return out;
}

Program build_sort(const SortBuildOptions& opt) {
  if (opt.n_elements < 2) throw InvalidArgument("sort needs at least two elements");
  if (opt.element_width < 1) throw InvalidArgument("element width must be >= 1");

  Program prog;
  prog.kind = ProgramKind::kSort;
  prog.n_elements = opt.n_elements;
  prog.element_width = opt.element_width;
  prog.values = opt.values;
  Registry& reg = prog.registry;

  ArraySpec a = ArraySpec::alloc(reg, opt.n_elements, opt.element_width, "A");
  if (opt.values) {
    if (opt.values->size() != opt.n_elements) {
      throw InvalidArgument("expected " + std::to_string(opt.n_elements) + " values, got " +
                            std::to_string(opt.values->size()));
    }
    for (std::size_t i = 0; i < opt.values->size(); ++i) a.known_values[i] = (*opt.values)[i];
  }
  ArraySpec b = ArraySpec::alloc(reg, opt.n_elements, opt.element_width, "B");

  std::vector<std::vector<VarId>> mapping(opt.n_elements);
  for (std::size_t i = 0; i < opt.n_elements; ++i) {
    mapping[i].reserve(opt.n_elements);
    for (std::size_t j = 0; j < opt.n_elements; ++j) {
      mapping[i].push_back(reg.fresh_var("M." + std::to_string(i) + "." + std::to_string(j),
                                         VarRole::kInput, "M"));
    }
  }

  Polynomial h_map = h_mapping(mapping);
  AssignTerm assign = h_assign(mapping, a, b, reg);
  Polynomial h_ord = h_ordering(b, reg);

  // Each block is 0 exactly on its satisfying states and the blocks are
  // jointly satisfiable, so scaling each one past the reachable energy of
  // the blocks below it keeps the joint ground set exact.
  const Rat w_assign = Rat(1) + h_ord.max_energy_bound();
  const Rat w_map = Rat(1) + w_assign * assign.h.max_energy_bound() + h_ord.max_energy_bound();
  prog.hamiltonian = w_map * h_map + w_assign * assign.h + h_ord;
  prog.logic = prog.hamiltonian;

  for (std::size_t i = 0; i < opt.n_elements; ++i) {
    prog.decode.ints["A[" + std::to_string(i) + "]"] = a.elements[i];
    prog.decode.ints["B[" + std::to_string(i) + "]"] = b.elements[i];
  }
  prog.decode.matrix = mapping;

  prog.build_clamp = a.clamp_known();
  prog.qubo = reduce_to_quadratic(prog.hamiltonian.clamp(prog.build_clamp), reg);
  return prog;
}

}  // namespace qac
