#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "qac/error.hpp"
#include "qac/sort.hpp"
#include "test_util.hpp"

using namespace qac;
using test::brute_minimize;
using test::free_support;
using test::merged;

namespace {

std::vector<std::vector<VarId>> fresh_matrix(Registry& reg, std::size_t n) {
  std::vector<std::vector<VarId>> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i].push_back(reg.fresh_auto("M", VarRole::kInput, "M"));
  return m;
}

Assignment matrix_clamp(const std::vector<std::vector<VarId>>& m,
                        const std::vector<std::vector<bool>>& bits) {
  Assignment a;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) a.set(m[i][j], bits[i][j]);
  return a;
}

Program build(std::size_t n, std::size_t width, std::vector<std::uint64_t> values) {
  SortBuildOptions opt;
  opt.n_elements = n;
  opt.element_width = width;
  opt.values = std::move(values);
  return build_sort(opt);
}

}  // namespace

TEST_CASE("mapping constraint scores matrices") {
  Registry reg;
  auto m = fresh_matrix(reg, 2);
  Polynomial h = h_mapping(m);

  CHECK(h.evaluate(matrix_clamp(m, {{1, 0}, {0, 1}})) == Rat(0));
  CHECK(h.evaluate(matrix_clamp(m, {{0, 1}, {1, 0}})) == Rat(0));
  CHECK(h.evaluate(matrix_clamp(m, {{0, 0}, {0, 0}})) == Rat(4));
  CHECK(h.evaluate(matrix_clamp(m, {{1, 1}, {0, 0}})) == Rat(2));
  CHECK(h.evaluate(matrix_clamp(m, {{1, 1}, {1, 1}})) == Rat(4));

  // Zero exactly on the permutation matrices.
  auto best = brute_minimize(h, free_support(h));
  CHECK(best.min_energy == Rat(0));
  CHECK(best.minima.size() == 2);

  CHECK_THROWS_AS(h_mapping({}), InvalidArgument);
  CHECK_THROWS_AS(h_mapping({{m[0][0]}, {m[1][0], m[1][1]}}), InvalidArgument);
}

TEST_CASE("assignment term copies through ancillas") {
  Registry reg;
  ArraySpec a = ArraySpec::alloc(reg, 1, 1, "A");
  ArraySpec b = ArraySpec::alloc(reg, 1, 1, "B");
  auto m = fresh_matrix(reg, 1);
  AssignTerm term = h_assign(m, a, b, reg);
  REQUIRE(term.copy.size() == 1);
  REQUIRE(term.copy[0].size() == 1);
  REQUIRE(term.copy[0][0].size() == 1);
  const VarId z = term.copy[0][0][0];
  CHECK(reg.entry(z).role == VarRole::kAncilla);
  CHECK(reg.entry(z).group == "copy");

  // M*A + M*B - 2*M*z + 3*(AB - 2Az - 2Bz + 3z): conditional Hamming once
  // z = A*B, penalty 3 otherwise.
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    const bool mv = mask & 1, av = mask & 2, bv = mask & 4, zv = mask & 8;
    Assignment st;
    st.set(m[0][0], mv);
    st.set(a.elements[0].bits[0], av);
    st.set(b.elements[0].bits[0], bv);
    st.set(z, zv);
    const int expect = mv * av + mv * bv - 2 * mv * zv +
                       3 * (av * bv - 2 * av * zv - 2 * bv * zv + 3 * zv);
    CHECK(term.h.evaluate(st) == Rat(expect));
  }
}

TEST_CASE("assignment term shape checks") {
  Registry reg;
  ArraySpec a = ArraySpec::alloc(reg, 2, 2, "A");
  ArraySpec b = ArraySpec::alloc(reg, 2, 2, "B");
  ArraySpec narrow = ArraySpec::alloc(reg, 2, 1, "Bn");
  auto m = fresh_matrix(reg, 2);
  auto m3 = fresh_matrix(reg, 3);

  AssignTerm term = h_assign(m, a, b, reg);
  CHECK(reg.count_group("copy") == 8);  // element_width * n^2

  CHECK_THROWS_AS(h_assign(m3, a, b, reg), InvalidArgument);
  CHECK_THROWS_AS(h_assign(m, a, narrow, reg), InvalidArgument);
}

TEST_CASE("ordering term counts inversions") {
  auto min_at = [](const std::vector<std::uint64_t>& values) {
    Registry reg;
    ArraySpec b = ArraySpec::alloc(reg, values.size(), 2, "B");
    Polynomial h = h_ordering(b, reg);
    Assignment fixed;
    for (std::size_t i = 0; i < values.size(); ++i)
      test::merge_into(fixed, b.elements[i].clamp_to(values[i]));
    return brute_minimize(h, free_support(h, fixed), fixed).min_energy;
  };

  CHECK(min_at({1, 2, 3}) == Rat(0));
  CHECK(min_at({2, 2}) == Rat(0));
  CHECK(min_at({2, 1}) == Rat(1));
  CHECK(min_at({3, 2, 1}) == Rat(2));
  CHECK(min_at({0, 3, 2}) == Rat(1));

  Registry reg;
  ArraySpec single = ArraySpec::alloc(reg, 1, 2, "B");
  CHECK_THROWS_AS(h_ordering(single, reg), InvalidArgument);
}

TEST_CASE("sort end to end") {
  Program prog = build(2, 2, {3, 1});
  CHECK(prog.kind == ProgramKind::kSort);
  CHECK(prog.qubo.ledger.empty());  // blocks compose 2-local already
  CHECK(prog.hamiltonian.degree() <= 2);

  Polynomial h = prog.hamiltonian.clamp(prog.build_clamp);
  auto best = brute_minimize(h, free_support(h));
  CHECK(best.min_energy == Rat(0));
  REQUIRE(best.minima.size() == 1);

  PermutationDecode d = decode_permutation(merged(best.minima.front(), prog.build_clamp), prog);
  CHECK(d.perm == std::vector<std::size_t>{1, 0});
  CHECK(d.source_values == std::vector<std::uint64_t>{3, 1});
  CHECK(d.sorted_values == std::vector<std::uint64_t>{1, 3});
}

TEST_CASE("sort of equal values is doubly degenerate") {
  Program prog = build(2, 1, {0, 0});
  Polynomial h = prog.hamiltonian.clamp(prog.build_clamp);
  auto best = brute_minimize(h, free_support(h));
  CHECK(best.min_energy == Rat(0));
  CHECK(best.minima.size() == 2);
  for (const Assignment& st : best.minima) {
    PermutationDecode d = decode_permutation(merged(st, prog.build_clamp), prog);
    CHECK(d.sorted_values == std::vector<std::uint64_t>{0, 0});
  }
}

TEST_CASE("three element sort") {
  Program prog = build(3, 1, {1, 0, 1});
  Polynomial h = prog.hamiltonian.clamp(prog.build_clamp);
  auto best = brute_minimize(h, free_support(h));
  CHECK(best.min_energy == Rat(0));
  CHECK(best.minima.size() == 2);  // the two equal elements swap
  for (const Assignment& st : best.minima) {
    PermutationDecode d = decode_permutation(merged(st, prog.build_clamp), prog);
    CHECK(d.sorted_values == std::vector<std::uint64_t>{0, 1, 1});
    CHECK(d.perm[0] == 1);
  }
}

TEST_CASE("block weights rank violations") {
  Program prog = build(2, 1, {1, 0});
  const auto& m = prog.decode.matrix;

  // Valid permutation, wrong order: only the ordering block pays.
  Assignment wrong_order = merged(matrix_clamp(m, {{1, 0}, {0, 1}}), prog.build_clamp);
  test::merge_into(wrong_order, prog.decode.ints.at("B[0]").clamp_to(1));
  test::merge_into(wrong_order, prog.decode.ints.at("B[1]").clamp_to(0));
  Polynomial h = prog.hamiltonian.clamp(wrong_order);
  const Rat order_cost = brute_minimize(h, free_support(h)).min_energy;
  CHECK(order_cost == Rat(1));

  // Broken mapping: costs strictly more than any ordering violation.
  Assignment no_map = merged(matrix_clamp(m, {{0, 0}, {0, 0}}), prog.build_clamp);
  Polynomial h2 = prog.hamiltonian.clamp(no_map);
  CHECK(brute_minimize(h2, free_support(h2)).min_energy > order_cost);
}

TEST_CASE("permutation decode rejects non permutations") {
  SortBuildOptions opt;
  opt.n_elements = 2;
  opt.element_width = 1;
  Program prog = build_sort(opt);  // symbolic
  const auto& m = prog.decode.matrix;

  Assignment bits;
  for (const VarEntry& e : prog.registry.entries()) bits.set(e.id, false);

  Assignment zeros = merged(bits, matrix_clamp(m, {{0, 0}, {0, 0}}));
  CHECK_THROWS_AS(decode_permutation(zeros, prog), InconsistentState);

  Assignment row_double = merged(bits, matrix_clamp(m, {{1, 1}, {0, 0}}));
  CHECK_THROWS_AS(decode_permutation(row_double, prog), InconsistentState);

  Program no_matrix;
  CHECK_THROWS_AS(decode_permutation(bits, no_matrix), InvalidArgument);
}

TEST_CASE("sort build validation") {
  SortBuildOptions opt;
  opt.n_elements = 1;
  opt.element_width = 1;
  CHECK_THROWS_AS(build_sort(opt), InvalidArgument);

  opt.n_elements = 2;
  opt.element_width = 0;
  CHECK_THROWS_AS(build_sort(opt), InvalidArgument);

  opt.element_width = 1;
  opt.values = std::vector<std::uint64_t>{1};
  CHECK_THROWS_AS(build_sort(opt), InvalidArgument);

  opt.values = std::vector<std::uint64_t>{1, 2};  // 2 does not fit one bit
  CHECK_THROWS_AS(build_sort(opt), InvalidArgument);
}

TEST_CASE("sort registry shape") {
  Program prog = build(2, 2, {3, 1});
  CHECK(prog.registry.count_group("copy") == 8);
  CHECK(prog.registry.count_group("M") == 4);
  CHECK(prog.registry.count_group("A") == 4);
  CHECK(prog.registry.count_group("B") == 4);
  CHECK(prog.decode.matrix.size() == 2);
  CHECK(prog.logic == prog.hamiltonian);
}
