#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qac/polynomial.hpp"
#include "qac/registry.hpp"

namespace qac {

/// A variable, its negation, or a boolean constant. NOT never allocates a
/// variable: negation lives in the coefficients (1 - x), so gadget inputs can
/// be folded at build time.
class Lit {
 public:
  /* implicit */ Lit(VarId v) : var_(v) {}
  static Lit constant(bool value);
  static Lit negated(VarId v);

  bool is_constant() const { return const_; }
  /// Requires is_constant().
  bool constant_value() const;
  /// Requires !is_constant().
  VarId var() const;
  bool is_negated() const { return neg_; }

  Lit operator!() const;
  /// x, 1 - x, 0, or 1.
  Polynomial to_poly() const;
  bool eval(const Assignment& a) const;

  friend bool operator==(const Lit& a, const Lit& b) {
    return a.const_ == b.const_ && (a.const_ ? a.value_ == b.value_
                                             : (a.var_ == b.var_ && a.neg_ == b.neg_));
  }

 private:
  Lit() = default;
  VarId var_{0};
  bool neg_ = false;
  bool const_ = false;
  bool value_ = false;
};

/// Fixed-width unsigned integer over registry bits, LSB first.
struct QuantumInt {
  std::vector<VarId> bits;

  std::size_t width() const { return bits.size(); }
  /// Allocates `width` fresh bits labeled "<name>.b<j>". width must be >= 1.
  static QuantumInt alloc(Registry& reg, const std::string& name, std::size_t width,
                          VarRole role, const std::string& group);
  /// Sub-range view [offset, offset + width).
  QuantumInt field(std::size_t offset, std::size_t width) const;

  Polynomial value_poly() const;  // sum of 2^j * bit_j
  std::vector<Lit> lits() const;
  std::uint64_t decode(const Assignment& a) const;
  /// Assignment fixing this integer to `value`; throws if value >= 2^width.
  Assignment clamp_to(std::uint64_t value) const;
};

/// The bits of `value` as constant literals, LSB first; throws if value does
/// not fit in `width` bits.
std::vector<Lit> constant_lits(std::uint64_t value, std::size_t width);

}  // namespace qac
