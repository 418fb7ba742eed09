#include "qac/qubo.hpp"

#include <map>
#include <utility>

namespace qac {

namespace {

using Pair = std::pair<VarId, VarId>;

// Most frequent pair among degree >= 3 terms, smallest pair on ties.
Pair select_pair(const Polynomial& p) {
  std::map<Pair, std::size_t> freq;
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() < 3) continue;
    const auto& vs = m.vars();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        ++freq[{vs[i], vs[j]}];
      }
    }
  }
  Pair best{};
  std::size_t best_count = 0;
  for (const auto& [pr, n] : freq) {
    if (n > best_count) {
      best = pr;
      best_count = n;
    }
  }
  return best;
}

}  // namespace

Qubo reduce_to_quadratic(const Polynomial& p, Registry& reg) {
  Qubo result;
  result.base = p;
  while (result.base.degree() > 2) {
    auto [a, b] = select_pair(result.base);
    VarId z = reg.fresh_auto("red", VarRole::kAncilla, "red");

    Polynomial rewritten;
    rewritten += Polynomial(result.base.constant());
    Rat abs_sum = 0;
    for (const auto& [m, c] : result.base.terms()) {
      if (m.degree() >= 3 && m.contains_pair(a, b)) {
        rewritten.add_term(m.substitute_pair(a, b, z), c);
        abs_sum += c < 0 ? -c : c;
      } else {
        rewritten.add_term(m, c);
      }
    }
    Rat weight = 1 + abs_sum;

    // weight * (ab - 2az - 2bz + 3z): 0 when z == ab, >= weight otherwise.
    rewritten.add_term(Monomial({a, b}), weight);
    rewritten.add_term(Monomial({a, z}), -2 * weight);
    rewritten.add_term(Monomial({b, z}), -2 * weight);
    rewritten.add_term(Monomial(z), 3 * weight);

    result.base = std::move(rewritten);
    result.ledger.push_back({z, a, b, weight});
  }
  return result;
}

}  // namespace qac
