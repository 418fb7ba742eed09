#include "qac/gadgets.hpp"

#include <utility>

#include "qac/error.hpp"

namespace qac {

namespace {

using Composer = GadgetComposer;

GadgetResult passthrough(const Lit& l) {
  GadgetResult r;
  r.output = l;
  return r;
}

// Balanced pairwise tree over `lits` with the given 2-input node builder.
template <typename Node>
GadgetResult pairwise_tree(std::vector<Lit> layer, Registry& reg, const std::string& group,
                           Node&& node) {
  Composer comp;
  while (layer.size() > 1) {
    std::vector<Lit> next;
    next.reserve((layer.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < layer.size(); i += 2) {
      GadgetResult pair = node(layer[i], layer[i + 1], reg, group);
      if (layer.size() == 2) return comp.finish(std::move(pair));
      next.push_back(comp.absorb(std::move(pair)));
    }
    if (layer.size() % 2 == 1) next.push_back(layer.back());
    layer = std::move(next);
  }
  return comp.finish(passthrough(layer.front()));
}

std::vector<Lit> to_lits(const std::vector<VarId>& vars) {
  return std::vector<Lit>(vars.begin(), vars.end());
}

}  // namespace

GadgetResult and_pair(const Lit& x, const Lit& y, Registry& reg, const std::string& group) {
  if (x.is_constant()) return passthrough(x.constant_value() ? y : Lit::constant(false));
  if (y.is_constant()) return passthrough(y.constant_value() ? x : Lit::constant(false));
  if (x.var() == y.var()) {
    return passthrough(x.is_negated() == y.is_negated() ? x : Lit::constant(false));
  }
  GadgetResult r;
  VarId z = reg.fresh_auto("and", VarRole::kDerived, group);
  Polynomial px = x.to_poly();
  Polynomial py = y.to_poly();
  Polynomial pz = Polynomial::variable(z);
  r.hamiltonian = px * py - Rat(2) * (px * pz) - Rat(2) * (py * pz) + Rat(3) * pz;
  r.output = Lit(z);
  r.output_fresh = true;
  return r;
}

GadgetResult or_pair(const Lit& x, const Lit& y, Registry& reg, const std::string& group) {
  if (x.is_constant()) return passthrough(x.constant_value() ? Lit::constant(true) : y);
  if (y.is_constant()) return passthrough(y.constant_value() ? Lit::constant(true) : x);
  if (x.var() == y.var()) {
    return passthrough(x.is_negated() == y.is_negated() ? x : Lit::constant(true));
  }
  GadgetResult r;
  VarId z = reg.fresh_auto("or", VarRole::kDerived, group);
  Polynomial px = x.to_poly();
  Polynomial py = y.to_poly();
  Polynomial pz = Polynomial::variable(z);
  r.hamiltonian = px + py + pz + px * py - Rat(2) * (px * pz) - Rat(2) * (py * pz);
  r.output = Lit(z);
  r.output_fresh = true;
  return r;
}

GadgetResult bit_equality(VarId x, VarId y, Registry& reg, const std::string& group) {
  if (x == y) {
    throw InvalidArgument("bit_equality of a variable with itself; use constant 1");
  }
  return bit_equality_lit(Lit(x), Lit(y), reg, group);
}

GadgetResult bit_equality_lit(const Lit& x, const Lit& y, Registry& reg,
                              const std::string& group) {
  if (x.is_constant()) return passthrough(x.constant_value() ? y : !y);
  if (y.is_constant()) return passthrough(y.constant_value() ? x : !x);
  if (x.var() == y.var()) {
    return passthrough(Lit::constant(x.is_negated() == y.is_negated()));
  }
  GadgetResult r;
  VarId c = reg.fresh_auto("beq", VarRole::kDerived, group);
  Polynomial px = x.to_poly();
  Polynomial py = y.to_poly();
  Polynomial pc = Polynomial::variable(c);
  // Raw cubic with ground value -1 on the c == [x==y] rows; +1 normalizes.
  Polynomial raw = Rat(2) * (px * py) - px - py - pc + Rat(2) * (px * pc) +
                   Rat(2) * (py * pc) - Rat(4) * (px * py * pc) + Polynomial(1);
  Qubo reduced = reduce_to_quadratic(raw, reg);
  r.hamiltonian = std::move(reduced.base);
  for (const ReductionStep& step : reduced.ledger) r.ancillas.push_back(step.ancilla);
  r.output = Lit(c);
  r.output_fresh = true;
  return r;
}

GadgetResult and_tree(const std::vector<Lit>& inputs, Registry& reg, const std::string& group) {
  if (inputs.empty()) throw InvalidArgument("and_tree requires at least one input");
  for (const Lit& l : inputs) {
    if (l.is_constant() && !l.constant_value()) return passthrough(Lit::constant(false));
  }
  std::vector<Lit> live;
  for (const Lit& l : inputs) {
    if (!l.is_constant()) live.push_back(l);
  }
  if (live.empty()) return passthrough(Lit::constant(true));
  return pairwise_tree(std::move(live), reg, group, and_pair);
}

GadgetResult and_tree(const std::vector<VarId>& inputs, Registry& reg, const std::string& group) {
  return and_tree(to_lits(inputs), reg, group);
}

GadgetResult or_tree(const std::vector<Lit>& inputs, Registry& reg, const std::string& group) {
  if (inputs.empty()) throw InvalidArgument("or_tree requires at least one input");
  for (const Lit& l : inputs) {
    if (l.is_constant() && l.constant_value()) return passthrough(Lit::constant(true));
  }
  std::vector<Lit> live;
  for (const Lit& l : inputs) {
    if (!l.is_constant()) live.push_back(l);
  }
  if (live.empty()) return passthrough(Lit::constant(false));
  return pairwise_tree(std::move(live), reg, group, or_pair);
}

GadgetResult or_tree(const std::vector<VarId>& inputs, Registry& reg, const std::string& group) {
  return or_tree(to_lits(inputs), reg, group);
}

GadgetResult int_equality(const QuantumInt& x, const QuantumInt& y, Registry& reg,
                          const std::string& group) {
  if (x.width() != y.width()) {
    throw InvalidArgument("int_equality width mismatch: " + std::to_string(x.width()) + " vs " +
                          std::to_string(y.width()));
  }
  if (x.width() == 1) return bit_equality(x.bits[0], y.bits[0], reg, group);
  Composer comp;
  std::vector<Lit> flags;
  flags.reserve(x.width());
  for (std::size_t j = 0; j < x.width(); ++j) {
    flags.push_back(comp.absorb(bit_equality(x.bits[j], y.bits[j], reg, group)));
  }
  return comp.finish(and_tree(flags, reg, group));
}

GadgetResult int_equality_const(const QuantumInt& x, std::uint64_t c, Registry& reg,
                                const std::string& group) {
  std::vector<Lit> consts = constant_lits(c, x.width());  // validates range
  std::vector<Lit> flags;
  flags.reserve(x.width());
  for (std::size_t j = 0; j < x.width(); ++j) {
    flags.push_back(consts[j].constant_value() ? Lit(x.bits[j]) : Lit::negated(x.bits[j]));
  }
  return and_tree(flags, reg, group);
}

GadgetResult int_greater_than(const QuantumInt& x, const QuantumInt& y, Registry& reg,
                              const std::string& group) {
  if (x.width() != y.width()) {
    throw InvalidArgument("int_greater_than width mismatch: " + std::to_string(x.width()) +
                          " vs " + std::to_string(y.width()));
  }
  return int_greater_lits(x.lits(), y.lits(), reg, group);
}

GadgetResult int_greater_lits(const std::vector<Lit>& x, const std::vector<Lit>& y, Registry& reg,
                              const std::string& group) {
  if (x.size() != y.size()) {
    throw InvalidArgument("comparator width mismatch: " + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()));
  }
  if (x.empty()) throw InvalidArgument("comparator requires width >= 1");
  Composer comp;
  const std::size_t msb = x.size() - 1;
  GadgetResult top = and_pair(x[msb], !y[msb], reg, group);
  if (x.size() == 1) return comp.finish(std::move(top));
  // gt / eq over the already-seen prefix, MSB downwards.
  Lit gt = comp.absorb(std::move(top));
  Lit eq = comp.absorb(bit_equality_lit(x[msb], y[msb], reg, group));
  for (std::size_t step = 1; step <= msb; ++step) {
    std::size_t j = msb - step;
    Lit stage = comp.absorb(and_tree({eq, x[j], !y[j]}, reg, group));
    GadgetResult merged = or_pair(gt, stage, reg, group);
    if (j == 0) return comp.finish(std::move(merged));
    gt = comp.absorb(std::move(merged));
    Lit bit_eq = comp.absorb(bit_equality_lit(x[j], y[j], reg, group));
    eq = comp.absorb(and_pair(eq, bit_eq, reg, group));
  }
  throw InconsistentState("comparator chain fell through");
}

Polynomial int_leq_constraint(const QuantumInt& x, const QuantumInt& y, Registry& reg,
                              const std::string& group) {
  GadgetResult gt = int_greater_than(x, y, reg, group);
  return gt.hamiltonian + gt.output.to_poly();
}

Polynomial bit_assign_equal(const QuantumInt& x, const QuantumInt& y) {
  if (x.width() != y.width()) {
    throw InvalidArgument("bit_assign_equal width mismatch: " + std::to_string(x.width()) +
                          " vs " + std::to_string(y.width()));
  }
  Polynomial h;
  for (std::size_t j = 0; j < x.width(); ++j) {
    Polynomial diff = Polynomial::variable(x.bits[j]) - Polynomial::variable(y.bits[j]);
    h += diff.squared();
  }
  return h;
}

}  // namespace qac
