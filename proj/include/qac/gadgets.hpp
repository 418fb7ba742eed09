#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qac/polynomial.hpp"
#include "qac/quantum_int.hpp"
#include "qac/qubo.hpp"
#include "qac/registry.hpp"

namespace qac {

/// A derived flag plus the penalty polynomial that pins it down. The penalty
/// is >= 0 everywhere and 0 exactly where output and ancillas hold the values
/// the gadget defines. Constant folding can make the output a literal of an
/// input (or a constant); output_fresh says whether the gadget allocated the
/// output variable itself.
struct GadgetResult {
  Lit output = Lit::constant(false);
  Polynomial hamiltonian;
  std::vector<VarId> ancillas;  // fresh internals, excluding the output var
  bool output_fresh = false;
};

/// Accumulates sub-gadget penalties while composing a larger gadget;
/// absorbed sub-results' outputs become internals of the composite.
struct GadgetComposer {
  Polynomial h;
  std::vector<VarId> ancillas;

  Lit absorb(GadgetResult&& r) {
    h += r.hamiltonian;
    ancillas.insert(ancillas.end(), r.ancillas.begin(), r.ancillas.end());
    if (r.output_fresh) ancillas.push_back(r.output.var());
    return r.output;
  }

  /// Finish with `last` as the composite output: its variable stays out of
  /// the ancilla list.
  GadgetResult finish(GadgetResult&& last) {
    GadgetResult out;
    out.output = last.output;
    out.output_fresh = last.output_fresh;
    out.hamiltonian = std::move(h);
    out.hamiltonian += last.hamiltonian;
    out.ancillas = std::move(ancillas);
    out.ancillas.insert(out.ancillas.end(), last.ancillas.begin(), last.ancillas.end());
    return out;
  }
};

/// z = x AND y via the penalty xy - 2xz - 2yz + 3z (literals substituted).
/// Folds constants, repeated, and complementary inputs without allocating.
GadgetResult and_pair(const Lit& x, const Lit& y, Registry& reg, const std::string& group);

/// z = x OR y via the penalty x + y + z + xy - 2xz - 2yz (same folding rules).
GadgetResult or_pair(const Lit& x, const Lit& y, Registry& reg, const std::string& group);

/// C = 1 iff x == y. Cubic raw form 2xy - x - y - c + 2xc + 2yc - 4xyc,
/// normalized by +1 and reduced to 2-local with one ancilla.
GadgetResult bit_equality(VarId x, VarId y, Registry& reg, const std::string& group = "g");

/// bit_equality over literals; constants fold to a literal of the other input.
GadgetResult bit_equality_lit(const Lit& x, const Lit& y, Registry& reg, const std::string& group);

/// Balanced pairwise AND tree. Single input passes through unchanged.
GadgetResult and_tree(const std::vector<Lit>& inputs, Registry& reg, const std::string& group = "g");
GadgetResult and_tree(const std::vector<VarId>& inputs, Registry& reg, const std::string& group = "g");

/// Balanced pairwise OR tree; every tree-internal variable touches at most 4
/// others in the final QUBO.
GadgetResult or_tree(const std::vector<Lit>& inputs, Registry& reg, const std::string& group = "g");
GadgetResult or_tree(const std::vector<VarId>& inputs, Registry& reg, const std::string& group = "g");

/// flag = 1 iff X == Y bitwise: per-bit equality flags joined by an AND tree.
GadgetResult int_equality(const QuantumInt& x, const QuantumInt& y, Registry& reg,
                          const std::string& group = "g");

/// int_equality against a compile-time constant: per-bit flags fold to
/// literals X_j or (1 - X_j); strictly fewer ancillas than the general form.
GadgetResult int_equality_const(const QuantumInt& x, std::uint64_t c, Registry& reg,
                                const std::string& group = "g");

/// flag = 1 iff value(X) > value(Y), unsigned. MSB-first chain
/// gt_j = gt_{j+1} OR (eq_{j+1} AND X_j AND NOT Y_j).
GadgetResult int_greater_than(const QuantumInt& x, const QuantumInt& y, Registry& reg,
                              const std::string& group = "g");

/// Generic comparator over literal vectors (constants fold away stages).
GadgetResult int_greater_lits(const std::vector<Lit>& x, const std::vector<Lit>& y, Registry& reg,
                              const std::string& group);

/// Constraint energy: 0 iff value(X) <= value(Y). int_greater_than plus a
/// unit penalty on its flag.
Polynomial int_leq_constraint(const QuantumInt& x, const QuantumInt& y, Registry& reg,
                              const std::string& group = "g");

/// Hamming distance: sum of (X_j - Y_j)^2 per bit. No ancillas.
Polynomial bit_assign_equal(const QuantumInt& x, const QuantumInt& y);

}  // namespace qac
