#pragma once

#include <vector>

#include "qac/polynomial.hpp"
#include "qac/registry.hpp"

namespace qac {

/// One pair-substitution step of degree reduction: z replaces a*b, enforced
/// by penalty_weight * (ab - 2az - 2bz + 3z).
struct ReductionStep {
  VarId ancilla;
  VarId a;  // a < b
  VarId b;
  Rat penalty_weight;
};

/// Degree-<=2 polynomial plus the substitution ledger that produced it. The
/// constant offset lives in base.constant().
struct Qubo {
  Polynomial base;
  std::vector<ReductionStep> ledger;
};

/// Rosenberg reduction to degree <= 2. Substitution targets the most frequent
/// pair among degree >= 3 terms (ties broken by smallest pair, lexicographic)
/// and rewrites only those terms; the penalty weight 1 + sum of |coeff| over
/// the rewritten terms makes every z != ab state cost more than any energy the
/// rewritten terms can recover. Ground states project exactly onto the input's
/// ground states; already-quadratic input passes through with an empty ledger.
Qubo reduce_to_quadratic(const Polynomial& p, Registry& reg);

}  // namespace qac
