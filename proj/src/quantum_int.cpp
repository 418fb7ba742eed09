#include "qac/quantum_int.hpp"

#include "qac/error.hpp"

namespace qac {

Lit Lit::constant(bool value) {
  Lit l;
  l.const_ = true;
  l.value_ = value;
  return l;
}

Lit Lit::negated(VarId v) {
  Lit l(v);
  l.neg_ = true;
  return l;
}

bool Lit::constant_value() const {
  if (!const_) throw InconsistentState("constant_value on a non-constant literal");
  return value_;
}

VarId Lit::var() const {
  if (const_) throw InconsistentState("var() on a constant literal");
  return var_;
}

Lit Lit::operator!() const {
  Lit l = *this;
  if (l.const_) {
    l.value_ = !l.value_;
  } else {
    l.neg_ = !l.neg_;
  }
  return l;
}

Polynomial Lit::to_poly() const {
  if (const_) return Polynomial(value_ ? 1 : 0);
  Polynomial x = Polynomial::variable(var_);
  return neg_ ? Polynomial(1) - x : x;
}

bool Lit::eval(const Assignment& a) const {
  if (const_) return value_;
  return a.at(var_) != neg_;
}

QuantumInt QuantumInt::alloc(Registry& reg, const std::string& name, std::size_t width,
                             VarRole role, const std::string& group) {
  if (width < 1) throw InvalidArgument("quantum integer width must be >= 1");
  QuantumInt q;
  q.bits.reserve(width);
  for (std::size_t j = 0; j < width; ++j) {
    q.bits.push_back(reg.fresh_var(name + ".b" + std::to_string(j), role, group));
  }
  return q;
}

QuantumInt QuantumInt::field(std::size_t offset, std::size_t width) const {
  if (width < 1 || offset + width > bits.size()) {
    throw InvalidArgument("bit field [" + std::to_string(offset) + ", " +
                          std::to_string(offset + width) + ") outside element width " +
                          std::to_string(bits.size()));
  }
  QuantumInt q;
  q.bits.assign(bits.begin() + static_cast<std::ptrdiff_t>(offset),
                bits.begin() + static_cast<std::ptrdiff_t>(offset + width));
  return q;
}

Polynomial QuantumInt::value_poly() const {
  Polynomial p;
  Rat weight = 1;
  for (VarId b : bits) {
    p.add_term(Monomial(b), weight);
    weight *= 2;
  }
  return p;
}

std::vector<Lit> QuantumInt::lits() const {
  return std::vector<Lit>(bits.begin(), bits.end());
}

std::uint64_t QuantumInt::decode(const Assignment& a) const {
  std::uint64_t value = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (a.at(bits[j])) value |= std::uint64_t{1} << j;
  }
  return value;
}

Assignment QuantumInt::clamp_to(std::uint64_t value) const {
  if (bits.size() < 64 && (value >> bits.size()) != 0) {
    throw InvalidArgument("value " + std::to_string(value) + " does not fit in " +
                          std::to_string(bits.size()) + " bits");
  }
  Assignment a;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    a.set(bits[j], (value >> j) & 1);
  }
  return a;
}

std::vector<Lit> constant_lits(std::uint64_t value, std::size_t width) {
  if (width < 64 && (value >> width) != 0) {
    throw InvalidArgument("constant " + std::to_string(value) + " does not fit in " +
                          std::to_string(width) + " bits");
  }
  std::vector<Lit> out;
  out.reserve(width);
  for (std::size_t j = 0; j < width; ++j) {
    out.push_back(Lit::constant((value >> j) & 1));
  }
  return out;
}

}  // namespace qac
