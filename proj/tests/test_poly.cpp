#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "qac/error.hpp"
#include "qac/polynomial.hpp"
#include "qac/qubo.hpp"
#include "qac/rational.hpp"
#include "qac/registry.hpp"
#include "test_util.hpp"

using namespace qac;
using test::brute_minimize;
using test::free_support;

namespace {

Registry make_vars(std::size_t n, std::vector<VarId>& out) {
  Registry reg;
  out.clear();
  for (std::size_t i = 0; i < n; ++i) out.push_back(reg.fresh_auto("v", VarRole::kInput, "t"));
  return reg;
}

Polynomial var(VarId v) { return Polynomial::variable(v); }

}  // namespace

TEST_CASE("monomial canonical form") {
  VarId a(3), b(1), c(7);
  Monomial m({a, b, a});
  CHECK(m.degree() == 2);
  CHECK(m.vars() == std::vector<VarId>{b, a});
  CHECK(m.contains(a));
  CHECK(!m.contains(c));
  CHECK(m.contains_pair(b, a));
  CHECK(Monomial::product(Monomial(a), Monomial({a, b})) == Monomial({a, b}));
  Monomial sub = Monomial({a, b, c}).substitute_pair(b, a, VarId(9));
  CHECK(sub == Monomial({c, VarId(9)}));
  CHECK_THROWS_AS(Monomial({a, c}).substitute_pair(a, b, VarId(9)), InconsistentState);
}

TEST_CASE("idempotent squares") {
  std::vector<VarId> v;
  Registry reg = make_vars(2, v);
  Polynomial x = var(v[0]), y = var(v[1]);

  // (1 - x)^2 = 1 - 2x + x^2 = 1 - x under x^2 = x.
  CHECK((Polynomial(1) - x).squared() == Polynomial(1) - x);
  // (1 - x - y)^2 = 1 - x - y + 2xy.
  Polynomial expect = Polynomial(1) - x - y + Rat(2) * (x * y);
  CHECK((Polynomial(1) - x - y).squared() == expect);
}

TEST_CASE("evaluate and clamp") {
  std::vector<VarId> v;
  Registry reg = make_vars(2, v);
  Polynomial x = var(v[0]), y = var(v[1]);
  Polynomial p = x + y - Rat(3) * (x * y);

  CHECK(p.evaluate(Assignment{{v[0], true}, {v[1], true}}) == Rat(-1));
  CHECK(p.evaluate(Assignment{{v[0], true}, {v[1], false}}) == Rat(1));
  CHECK_THROWS_AS(p.evaluate(Assignment{{v[0], true}}), InvalidArgument);

  Polynomial sq = (Polynomial(1) - x - y).squared();
  Assignment fix_y;
  fix_y.set(v[1], true);
  CHECK(sq.clamp(fix_y) == x);
  CHECK(sq.clamp(Assignment{}) == sq);
}

TEST_CASE("max energy bound") {
  std::vector<VarId> v;
  Registry reg = make_vars(2, v);
  Polynomial x = var(v[0]), y = var(v[1]);
  Polynomial p = Polynomial(1) - x - y + Rat(2) * (x * y);
  CHECK(p.max_energy_bound() == Rat(3));
  auto all = brute_minimize(Rat(-1) * p, free_support(p));
  CHECK(Rat(-1) * all.min_energy <= p.max_energy_bound());
  CHECK((Rat(-2) * x).max_energy_bound() == Rat(0));
}

TEST_CASE("arithmetic agrees with evaluation") {
  std::vector<VarId> v;
  Registry reg = make_vars(10, v);
  std::mt19937 rng(42);
  auto random_poly = [&] {
    Polynomial p(Rat(int(rng() % 9) - 4));
    const std::size_t terms = 1 + rng() % 8;
    for (std::size_t t = 0; t < terms; ++t) {
      std::vector<VarId> mono;
      const std::size_t deg = 1 + rng() % 3;
      for (std::size_t d = 0; d < deg; ++d) mono.push_back(v[rng() % v.size()]);
      Rat coeff(int(rng() % 8) - 4, 1 + int(rng() % 2));
      if (coeff == 0) coeff = 1;
      p.add_term(Monomial(mono), coeff);
    }
    return p;
  };
  auto random_state = [&] {
    Assignment a;
    for (VarId id : v) a.set(id, rng() & 1);
    return a;
  };

  for (int round = 0; round < 50; ++round) {
    Polynomial p = random_poly(), q = random_poly();
    Polynomial sum = p + q, diff = p - q, prod = p * q, scaled = Rat(3, 2) * p;
    CHECK((p + q) - q == p);
    for (int s = 0; s < 20; ++s) {
      Assignment a = random_state();
      CHECK(sum.evaluate(a) == p.evaluate(a) + q.evaluate(a));
      CHECK(diff.evaluate(a) == p.evaluate(a) - q.evaluate(a));
      CHECK(prod.evaluate(a) == p.evaluate(a) * q.evaluate(a));
      CHECK(scaled.evaluate(a) == Rat(3, 2) * p.evaluate(a));
    }
  }
}

TEST_CASE("zero coefficients vanish") {
  std::vector<VarId> v;
  Registry reg = make_vars(2, v);
  Polynomial x = var(v[0]);
  Polynomial p = x - x;
  CHECK(p.is_zero());
  CHECK(p.term_count() == 0);
  p.add_term(Monomial(v[0]), Rat(0));
  CHECK(p.is_zero());
}

TEST_CASE("reduction leaves quadratics alone") {
  std::vector<VarId> v;
  Registry reg = make_vars(2, v);
  Polynomial p = var(v[0]) * var(v[1]) + Rat(3) * var(v[0]) - Rat(1, 2);
  Qubo q = reduce_to_quadratic(p, reg);
  CHECK(q.ledger.empty());
  CHECK(q.base == p);
  CHECK(reg.size() == 2);
}

TEST_CASE("single cubic reduces with one ancilla") {
  std::vector<VarId> v;
  Registry reg = make_vars(3, v);
  Polynomial p = var(v[0]) * var(v[1]) * var(v[2]);
  Qubo q = reduce_to_quadratic(p, reg);
  REQUIRE(q.ledger.size() == 1);
  CHECK(q.base.degree() <= 2);
  // Tie over the three pairs of the only cubic term: lexicographically
  // smallest pair wins; weight is 1 + |coeff|.
  CHECK(q.ledger[0].a == v[0]);
  CHECK(q.ledger[0].b == v[1]);
  CHECK(q.ledger[0].penalty_weight == Rat(2));
  CHECK(reg.entry(q.ledger[0].ancilla).role == VarRole::kAncilla);
  CHECK(reg.entry(q.ledger[0].ancilla).group == "red");

  // Per-input minimum over the ancilla equals the original energy.
  for (int mask = 0; mask < 8; ++mask) {
    Assignment a;
    for (int i = 0; i < 3; ++i) a.set(v[i], (mask >> i) & 1);
    auto best = brute_minimize(q.base, {q.ledger[0].ancilla}, a);
    CHECK(best.min_energy == p.evaluate(a));
  }
}

TEST_CASE("reduction penalty scales with coefficients") {
  std::vector<VarId> v;
  Registry reg = make_vars(3, v);
  Polynomial p = Rat(-5) * (var(v[0]) * var(v[1]) * var(v[2]));
  Qubo q = reduce_to_quadratic(p, reg);
  REQUIRE(q.ledger.size() == 1);
  CHECK(q.ledger[0].penalty_weight == Rat(6));
}

TEST_CASE("equality flag cubic reduces soundly") {
  // 2xy - x - y - c + 2xc + 2yc - 4xyc + 1: zero where c = [x == y], one
  // elsewhere. The only cubic term ties on all three pairs, so (x, y) wins
  // with weight 1 + 4 = 5.
  std::vector<VarId> v;
  Registry reg = make_vars(3, v);
  Polynomial x = var(v[0]), y = var(v[1]), c = var(v[2]);
  Polynomial raw = Rat(2) * (x * y) - x - y - c + Rat(2) * (x * c) + Rat(2) * (y * c) -
                   Rat(4) * (x * y * c) + Polynomial(1);
  Qubo q = reduce_to_quadratic(raw, reg);
  REQUIRE(q.ledger.size() == 1);
  CHECK(q.ledger[0].a == v[0]);
  CHECK(q.ledger[0].b == v[1]);
  CHECK(q.ledger[0].penalty_weight == Rat(5));

  for (int mask = 0; mask < 8; ++mask) {
    Assignment a;
    for (int i = 0; i < 3; ++i) a.set(v[i], (mask >> i) & 1);
    const bool xv = mask & 1, yv = (mask >> 1) & 1, cv = (mask >> 2) & 1;
    const Rat expect = (cv == (xv == yv)) ? 0 : 1;
    CHECK(raw.evaluate(a) == expect);
    auto best = brute_minimize(q.base, {q.ledger[0].ancilla}, a);
    CHECK(best.min_energy == expect);
  }
}

TEST_CASE("reduction is deterministic") {
  auto build = [] {
    std::vector<VarId> v;
    Registry reg = make_vars(5, v);
    Polynomial p = var(v[0]) * var(v[1]) * var(v[2]) + Rat(2) * (var(v[1]) * var(v[2]) * var(v[3]) * var(v[4])) -
                   var(v[0]) * var(v[3]) * var(v[4]);
    Qubo q = reduce_to_quadratic(p, reg);
    return std::pair(std::move(q), reg.size());
  };
  auto [q1, n1] = build();
  auto [q2, n2] = build();
  CHECK(n1 == n2);
  CHECK(q1.base == q2.base);
  REQUIRE(q1.ledger.size() == q2.ledger.size());
  for (std::size_t i = 0; i < q1.ledger.size(); ++i) {
    CHECK(q1.ledger[i].ancilla == q2.ledger[i].ancilla);
    CHECK(q1.ledger[i].a == q2.ledger[i].a);
    CHECK(q1.ledger[i].b == q2.ledger[i].b);
    CHECK(q1.ledger[i].penalty_weight == q2.ledger[i].penalty_weight);
  }
}

TEST_CASE("rational rendering") {
  CHECK(to_decimal_string(Rat(-19, 8)) == "-2.375");
  CHECK(to_decimal_string(Rat(1, 2)) == "0.5");
  CHECK(to_decimal_string(Rat(7)) == "7");
  CHECK(to_decimal_string(Rat(0)) == "0");
  CHECK(to_fraction_string(Rat(1, 2)) == "1/2");
  CHECK(to_fraction_string(Rat(-3)) == "-3");
  CHECK(is_dyadic(Rat(5, 16)));
  CHECK(!is_dyadic(Rat(1, 3)));
  CHECK_THROWS_AS(to_decimal_string(Rat(1, 3)), InvalidArgument);

  CHECK(parse_rational("0.5") == Rat(1, 2));
  CHECK(parse_rational("-2.375") == Rat(-19, 8));
  CHECK(parse_rational("7") == Rat(7));
  CHECK(parse_rational("3/4") == Rat(3, 4));
  CHECK_THROWS_AS(parse_rational("zebra"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational(""), InvalidArgument);
  CHECK(to_double(Rat(1, 2)) == 0.5);
}

TEST_CASE("registry bookkeeping") {
  Registry reg;
  VarId a = reg.fresh_var("a", VarRole::kInput, "A");
  VarId b = reg.fresh_var("b", VarRole::kDerived, "I");
  CHECK(a.value() == 0);
  CHECK(b.value() == 1);
  CHECK_THROWS_AS(reg.fresh_var("a", VarRole::kInput, "A"), InvalidArgument);
  VarId c = reg.fresh_auto("a", VarRole::kAncilla, "red");
  CHECK(reg.entry(c).label == "a.2");
  CHECK(reg.size() == 3);
  CHECK(reg.count_role(VarRole::kInput) == 1);
  CHECK(reg.count_group("A") == 1);
  CHECK(reg.has_label("b"));
  CHECK(!reg.has_label("zzz"));
  CHECK_THROWS_AS(reg.entry(VarId(99)), InvalidArgument);
  CHECK(parse_var_role(to_string(VarRole::kDerived)) == VarRole::kDerived);
  CHECK_THROWS_AS(parse_var_role("weird"), InvalidArgument);
}

TEST_CASE("assignment semantics") {
  VarId a(0), b(1);
  Assignment full{{a, true}, {b, false}};
  Assignment part{{a, true}};
  CHECK(full.extends(part));
  CHECK(!part.extends(full));
  CHECK(full.at(b) == false);
  CHECK_THROWS_AS(part.at(b), InvalidArgument);
  CHECK(part.get(b) == std::nullopt);
  CHECK(*full.get(a) == true);
}
