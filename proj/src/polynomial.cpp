#include "qac/polynomial.hpp"

#include <algorithm>

#include "qac/error.hpp"

namespace qac {

Monomial::Monomial(std::vector<VarId> vars) : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

Monomial Monomial::product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.vars_.reserve(a.vars_.size() + b.vars_.size());
  std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(),
                 std::back_inserter(out.vars_));
  return out;
}

bool Monomial::contains(VarId v) const {
  return std::binary_search(vars_.begin(), vars_.end(), v);
}

bool Monomial::contains_pair(VarId a, VarId b) const { return contains(a) && contains(b); }

Monomial Monomial::substitute_pair(VarId a, VarId b, VarId z) const {
  if (!contains_pair(a, b)) {
    throw InconsistentState("substitute_pair: monomial does not contain the pair");
  }
  std::vector<VarId> out;
  out.reserve(vars_.size() - 1);
  for (VarId v : vars_) {
    if (v != a && v != b) out.push_back(v);
  }
  out.push_back(z);
  return Monomial(std::move(out));
}

std::optional<bool> Assignment::get(VarId v) const {
  auto it = bits_.find(v);
  if (it == bits_.end()) return std::nullopt;
  return it->second;
}

bool Assignment::at(VarId v) const {
  auto it = bits_.find(v);
  if (it == bits_.end()) {
    throw InvalidArgument("assignment does not cover variable id " + std::to_string(v.value()));
  }
  return it->second;
}

bool Assignment::extends(const Assignment& partial) const {
  for (const auto& [v, bit] : partial.bits_) {
    auto mine = get(v);
    if (!mine || *mine != bit) return false;
  }
  return true;
}

Polynomial Polynomial::variable(VarId v) {
  Polynomial p;
  p.terms_.emplace(Monomial(v), Rat(1));
  return p;
}

Polynomial Polynomial::term(const Monomial& m, const Rat& coeff) {
  Polynomial p;
  p.add_term(m, coeff);
  return p;
}

std::size_t Polynomial::degree() const {
  std::size_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::set<VarId> Polynomial::support() const {
  std::set<VarId> out;
  for (const auto& [m, c] : terms_) out.insert(m.vars().begin(), m.vars().end());
  return out;
}

void Polynomial::add_term(const Monomial& m, const Rat& coeff) {
  if (coeff == 0) return;
  if (m.degree() == 0) {
    constant_ += coeff;
    return;
  }
  auto [it, inserted] = terms_.emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  constant_ += rhs.constant_;
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  constant_ -= rhs.constant_;
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  Polynomial out;
  out.constant_ = lhs.constant_ * rhs.constant_;
  if (lhs.constant_ != 0) {
    for (const auto& [m, c] : rhs.terms_) out.add_term(m, lhs.constant_ * c);
  }
  if (rhs.constant_ != 0) {
    for (const auto& [m, c] : lhs.terms_) out.add_term(m, rhs.constant_ * c);
  }
  for (const auto& [ml, cl] : lhs.terms_) {
    for (const auto& [mr, cr] : rhs.terms_) {
      out.add_term(Monomial::product(ml, mr), cl * cr);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Rat& scalar) {
  if (scalar == 0) {
    terms_.clear();
    constant_ = 0;
    return *this;
  }
  constant_ *= scalar;
  for (auto& [m, c] : terms_) c *= scalar;
  return *this;
}

Rat Polynomial::evaluate(const Assignment& a) const {
  Rat total = constant_;
  for (const auto& [m, c] : terms_) {
    bool on = true;
    for (VarId v : m.vars()) {
      if (!a.at(v)) {
        on = false;
        break;
      }
    }
    if (on) total += c;
  }
  return total;
}

Polynomial Polynomial::clamp(const Assignment& partial) const {
  Polynomial out;
  out.constant_ = constant_;
  for (const auto& [m, c] : terms_) {
    std::vector<VarId> kept;
    bool zeroed = false;
    for (VarId v : m.vars()) {
      auto bit = partial.get(v);
      if (!bit) {
        kept.push_back(v);
      } else if (!*bit) {
        zeroed = true;
        break;
      }
    }
    if (zeroed) continue;
    out.add_term(Monomial(std::move(kept)), c);
  }
  return out;
}

Rat Polynomial::max_energy_bound() const {
  Rat bound = constant_;
  for (const auto& [m, c] : terms_) {
    if (c > 0) bound += c;
  }
  return bound;
}

}  // namespace qac
