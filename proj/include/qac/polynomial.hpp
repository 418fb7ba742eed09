#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "qac/rational.hpp"
#include "qac/registry.hpp"

namespace qac {

/// Product of distinct variables, sorted ascending. The empty monomial is the
/// constant 1 and is kept out of Polynomial's term map (the constant lives in
/// its own field).
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(VarId v) : vars_{v} {}
  /// Sorts and deduplicates (x*x == x).
  explicit Monomial(std::vector<VarId> vars);

  static Monomial product(const Monomial& a, const Monomial& b);

  const std::vector<VarId>& vars() const { return vars_; }
  std::size_t degree() const { return vars_.size(); }
  bool contains(VarId v) const;
  bool contains_pair(VarId a, VarId b) const;
  /// Removes {a, b}, inserts z. Requires contains_pair(a, b).
  Monomial substitute_pair(VarId a, VarId b, VarId z) const;

  friend bool operator<(const Monomial& a, const Monomial& b) { return a.vars_ < b.vars_; }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.vars_ == b.vars_; }

 private:
  std::vector<VarId> vars_;
};

/// Total or partial 0/1 assignment.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<const VarId, bool>> init) : bits_(init) {}

  void set(VarId v, bool value) { bits_[v] = value; }
  std::optional<bool> get(VarId v) const;
  /// Throws InvalidArgument naming the variable if unset.
  bool at(VarId v) const;
  bool contains(VarId v) const { return bits_.count(v) > 0; }
  std::size_t size() const { return bits_.size(); }
  const std::map<VarId, bool>& bits() const { return bits_; }
  /// True if other agrees with this one on this one's whole domain.
  bool extends(const Assignment& partial) const;

  friend bool operator==(const Assignment& a, const Assignment& b) { return a.bits_ == b.bits_; }
  friend bool operator<(const Assignment& a, const Assignment& b) { return a.bits_ < b.bits_; }

 private:
  std::map<VarId, bool> bits_;
};

/// Multilinear pseudo-boolean polynomial with exact rational coefficients,
/// kept in canonical form: terms sorted by monomial, no zero coefficients,
/// idempotence (x^2 == x) applied on every multiplication. Equal polynomials
/// compare equal structurally.
class Polynomial {
 public:
  Polynomial() = default;
  /* implicit */ Polynomial(const Rat& constant) : constant_(constant) {}
  /* implicit */ Polynomial(int constant) : constant_(constant) {}

  static Polynomial variable(VarId v);
  static Polynomial term(const Monomial& m, const Rat& coeff);

  const std::map<Monomial, Rat>& terms() const { return terms_; }
  const Rat& constant() const { return constant_; }
  bool is_zero() const { return terms_.empty() && constant_ == 0; }
  std::size_t term_count() const { return terms_.size(); }
  std::size_t degree() const;
  std::set<VarId> support() const;

  void add_term(const Monomial& m, const Rat& coeff);

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  Polynomial& operator*=(const Rat& scalar);
  friend Polynomial operator*(const Rat& scalar, Polynomial p) { return p *= scalar; }
  Polynomial squared() const { return *this * *this; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.constant_ == b.constant_ && a.terms_ == b.terms_;
  }

  /// Exact energy. The assignment must cover the support; a missing variable
  /// throws InvalidArgument naming it.
  Rat evaluate(const Assignment& a) const;

  /// Substitutes the given constants and re-canonicalizes.
  Polynomial clamp(const Assignment& partial) const;

  /// constant() + sum of positive coefficients: cheap upper bound on the
  /// maximum attainable energy, used for penalty sizing.
  Rat max_energy_bound() const;

 private:
  std::map<Monomial, Rat> terms_;
  Rat constant_ = 0;
};

}  // namespace qac
