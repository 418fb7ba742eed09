#pragma once

// Brute-force minimization by direct evaluation, independent of the solver
// kernel under test. Terms are compiled once per call to bitmasks plus
// integer-scaled coefficients (exact for the dyadic rationals the builders
// emit); anything that does not fit int64 falls back to rational sums.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qac/polynomial.hpp"

namespace qac::test {

struct BruteResult {
  Rat min_energy = 0;
  std::vector<Assignment> minima;  // fixed vars merged in
};

inline void merge_into(Assignment& into, const Assignment& from) {
  for (const auto& [v, bit] : from.bits()) into.set(v, bit);
}

inline Assignment merged(const Assignment& a, const Assignment& b) {
  Assignment out = a;
  merge_into(out, b);
  return out;
}

// Minimum of p over all 2^|vars| completions, `fixed` merged into every
// result state. vars must cover support(p) minus the fixed domain.
inline BruteResult brute_minimize(const Polynomial& p, const std::vector<VarId>& vars,
                                  const Assignment& fixed = {}) {
  if (vars.size() > 26) throw std::runtime_error("brute_minimize: too many free variables");
  const Polynomial q = fixed.size() ? p.clamp(fixed) : p;

  std::unordered_map<VarId, std::size_t> pos;
  for (std::size_t i = 0; i < vars.size(); ++i) pos[vars[i]] = i;
  std::vector<std::uint64_t> masks;
  std::vector<Rat> coeffs;
  masks.reserve(q.term_count());
  for (const auto& [mono, coeff] : q.terms()) {
    std::uint64_t tmask = 0;
    for (VarId v : mono.vars()) {
      auto it = pos.find(v);
      if (it == pos.end()) throw std::runtime_error("brute_minimize: vars miss the support");
      tmask |= std::uint64_t(1) << it->second;
    }
    masks.push_back(tmask);
    coeffs.push_back(coeff);
  }

  // Common denominator and int64 head-room check.
  BigInt scale = 1;
  for (const Rat& c : coeffs) scale = boost::multiprecision::lcm(scale, denominator(c));
  scale = boost::multiprecision::lcm(scale, denominator(q.constant()));
  BigInt reach = boost::multiprecision::abs(numerator(q.constant()) * scale /
                                            denominator(q.constant()));
  std::vector<std::int64_t> scaled(coeffs.size());
  bool fits = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    BigInt s = numerator(coeffs[i]) * scale / denominator(coeffs[i]);
    reach += boost::multiprecision::abs(s);
    if (reach > std::numeric_limits<std::int64_t>::max() / 4) {
      fits = false;
      break;
    }
    scaled[i] = s.convert_to<std::int64_t>();
  }

  BruteResult out;
  bool first = true;
  std::vector<std::uint64_t> best_masks;
  const std::uint64_t total = std::uint64_t(1) << vars.size();

  if (fits) {
    const std::int64_t base =
        BigInt(numerator(q.constant()) * scale / denominator(q.constant()))
            .convert_to<std::int64_t>();
    std::int64_t best = 0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      std::int64_t e = base;
      for (std::size_t i = 0; i < masks.size(); ++i) {
        if ((mask & masks[i]) == masks[i]) e += scaled[i];
      }
      if (first || e < best) {
        best = e;
        best_masks.clear();
        first = false;
      }
      if (e == best) best_masks.push_back(mask);
    }
    out.min_energy = Rat(BigInt(best), scale);
  } else {
    Rat best = 0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      Rat e = q.constant();
      for (std::size_t i = 0; i < masks.size(); ++i) {
        if ((mask & masks[i]) == masks[i]) e += coeffs[i];
      }
      if (first || e < best) {
        best = e;
        best_masks.clear();
        first = false;
      }
      if (e == best) best_masks.push_back(mask);
    }
    out.min_energy = best;
  }

  out.minima.reserve(best_masks.size());
  for (std::uint64_t mask : best_masks) {
    Assignment a = fixed;
    for (std::size_t i = 0; i < vars.size(); ++i) a.set(vars[i], (mask >> i) & 1);
    out.minima.push_back(a);
  }
  return out;
}

inline std::vector<VarId> free_support(const Polynomial& p, const Assignment& fixed = {}) {
  std::vector<VarId> vars;
  for (VarId v : p.support())
    if (!fixed.contains(v)) vars.push_back(v);
  return vars;
}

}  // namespace qac::test
