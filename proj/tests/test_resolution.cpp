#include <doctest.h>

#include <random>

#include "lvl/resolution.hpp"

using namespace lvl;

namespace {

AlgebraPtr make(FieldSpec f, std::vector<Generator> gens, std::vector<Exponents> rels) {
  return std::make_shared<GradedAlgebra>(f, std::move(gens), std::move(rels));
}

Resolution resolve(const GradedModule& m, BoundSpec b) {
  PresentedView v(std::make_shared<const GradedModule>(m));
  return minimal_free_resolution(v, b);
}

void check_complex_invariants(const Resolution& r) {
  const auto& A = *r.alg();
  for (int s = 1; s <= r.last_step(); ++s)
    for (int k = 0; k < r.rank_at(s); ++k) {
      const ModElement& img = r.step(s).images[k];
      /* minimality: differentials land in A+ . F_{s-1} */
      for (auto& t : img) CHECK(A.mono_degree(t.mono) > 0);
      /* d o d = 0 */
      if (s >= 2) CHECK(r.apply_diff(s - 1, img).empty());
    }
}

}  // namespace

TEST_CASE("cyclic torsion module over a polynomial line") {
  auto A = make(FieldSpec::Q(), {{"t", 2}}, {});
  GradedModule M(A, {{"m", 0}}, {{{{2}, 0, A->field().one()}}});
  Resolution r = resolve(M, {6, 20});
  CHECK(r.terminated());
  CHECK(r.termination_step() == 2);
  CHECK(projective_dimension(r) == Bound::exact(1));
  CHECK(grade(r) == Bound::exact(1));
  TorTable t = tor_table(r);
  CHECK(t.terminated);
  CHECK(t.entries == std::map<std::pair<int, int>, int>{{{0, 0}, 1}, {{1, 4}, 1}});
  CHECK(r.step(1).gen_degrees == std::vector<int>{4});
  check_complex_invariants(r);
  for (int d = 0; d <= 20; ++d) CHECK(r.euler(d) == M.dim(d));
}

TEST_CASE("residue field of the dual numbers never terminates") {
  auto A = make(FieldSpec::Q(), {{"x", 2}}, {{2}});
  GradedModule k = GradedModule::trivial_module(A, {{"1", 0}});
  Resolution r = resolve(k, {5, 20});
  CHECK(!r.terminated());
  CHECK(projective_dimension(r) == Bound::at_least(6));
  CHECK(grade(r) == Bound::exact(0)); /* socle: Hom(k, A) != 0 */
  TorTable t = tor_table(r);
  std::map<std::pair<int, int>, int> expect;
  for (int i = 0; i <= 5; ++i) expect[{i, 2 * i}] = 1;
  CHECK(t.entries == expect);
  /* the witness step past n_max is present and nonzero */
  CHECK(r.last_step() == 6);
  CHECK(r.rank_at(6) == 1);
  check_complex_invariants(r);
}

TEST_CASE("free modules have projective dimension zero") {
  auto A = make(FieldSpec::Fp(3), {{"x", 2}, {"y", 3}}, {{2, 0}});
  GradedModule F = GradedModule::free_module(A, {{"e0", 0}, {"e1", 5}});
  Resolution r = resolve(F, {4, 18});
  CHECK(r.terminated());
  CHECK(projective_dimension(r) == Bound::exact(0));
  CHECK(grade(r) == Bound::exact(0));
  TorTable t = tor_table(r);
  CHECK(t.entries == std::map<std::pair<int, int>, int>{{{0, 0}, 1}, {{0, 5}, 1}});
}

TEST_CASE("complete intersection of two monomial quadrics") {
  /* S = k[t1..t4], M = S/(t1 t3, t2 t4): 0 -> S(-8) -> S(-4)^2 -> S -> M */
  auto S = make(FieldSpec::Q(), {{"t1", 2}, {"t2", 2}, {"t3", 2}, {"t4", 2}}, {});
  const Scalar one = S->field().one();
  GradedModule M(S, {{"m", 0}}, {{{{1, 0, 1, 0}, 0, one}}, {{{0, 1, 0, 1}, 0, one}}});
  Resolution r = resolve(M, {5, 12});
  CHECK(r.terminated());
  CHECK(projective_dimension(r) == Bound::exact(2));
  CHECK(grade(r) == Bound::exact(2));
  TorTable t = tor_table(r);
  CHECK(t.entries ==
        std::map<std::pair<int, int>, int>{{{0, 0}, 1}, {{1, 4}, 2}, {{2, 8}, 1}});
  check_complex_invariants(r);
  for (int d = 0; d <= 12; ++d) CHECK(r.euler(d) == M.dim(d));
}

TEST_CASE("residue field over polynomial rings: binomial Tor, grade = pd = l") {
  for (int l = 1; l <= 3; ++l) {
    std::vector<Generator> gens;
    for (int i = 0; i < l; ++i) gens.push_back({"t" + std::to_string(i + 1), 2});
    auto S = make(FieldSpec::Fp(5), gens, {});
    GradedModule k = GradedModule::trivial_module(S, {{"1", 0}});
    Resolution r = resolve(k, {5, 14});
    CHECK(r.terminated());
    CHECK(r.termination_step() == l + 1);
    CHECK(projective_dimension(r) == Bound::exact(l));
    CHECK(grade(r) == Bound::exact(l));
    TorTable t = tor_table(r);
    std::map<std::pair<int, int>, int> expect;
    int binom = 1;
    for (int i = 0; i <= l; ++i) {
      expect[{i, 2 * i}] = binom;
      binom = binom * (l - i) / (i + 1);
    }
    CHECK(t.entries == expect);
    check_complex_invariants(r);
  }
}

TEST_CASE("exterior line: linear Tor in every step") {
  auto E = make(FieldSpec::Q(), {{"a", 1}}, {});
  GradedModule k = GradedModule::trivial_module(E, {{"1", 0}});
  Resolution r = resolve(k, {4, 12});
  CHECK(!r.terminated());
  TorTable t = tor_table(r);
  std::map<std::pair<int, int>, int> expect;
  for (int i = 0; i <= 4; ++i) expect[{i, i}] = 1;
  CHECK(t.entries == expect);
  CHECK(grade(r) == Bound::exact(0)); /* a is the socle */
  check_complex_invariants(r);
}

TEST_CASE("euler characteristic equals the Hilbert function through the window") {
  std::mt19937 rng(2024);
  auto S = make(FieldSpec::Fp(3), {{"x", 2}, {"y", 2}}, {});
  FreeModule cover(S, {0, 1});
  int tested = 0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<ModElement> rels;
    for (int i = 0; i < 2; ++i) {
      int d = 2 + static_cast<int>(rng() % 5);
      ModElement e;
      for (auto& bt : cover.basis(d))
        e.push_back({bt.mono, bt.gen, S->field().from_int(static_cast<long>(rng() % 3))});
      e = cover.canonical(std::move(e));
      if (!e.empty()) rels.push_back(e);
    }
    GradedModule M(S, {{"p", 0}, {"q", 1}}, rels);
    Resolution r = resolve(M, {8, 12});
    /* F_i generators sit in degree >= i (algebra generated in degree 2),
       so the sum over computed steps is the full alternating sum for d <= 12 */
    for (int d = 0; d <= 12; ++d) {
      CHECK(r.euler(d) == M.dim(d));
      ++tested;
    }
    check_complex_invariants(r);
  }
  CHECK(tested == 130);
}

TEST_CASE("shift moves Tor internal degrees") {
  auto S = make(FieldSpec::Q(), {{"t1", 2}, {"t2", 2}, {"t3", 2}, {"t4", 2}}, {});
  const Scalar one = S->field().one();
  GradedModule M(S, {{"m", 0}}, {{{{1, 0, 1, 0}, 0, one}}, {{{0, 1, 0, 1}, 0, one}}});
  TorTable t0 = tor_table(resolve(M, {4, 12}));
  TorTable t3 = tor_table(resolve(M.shifted(3), {4, 9}));
  for (auto& [k, v] : t0.entries)
    CHECK(t3.dim(k.first, k.second - 3) == v);
  /* direct sums add Tor */
  TorTable ts = tor_table(resolve(GradedModule::direct_sum(M, M.shifted(3)), {4, 9}));
  for (auto& [k, v] : t0.entries) {
    if (k.second > 9) continue;
    CHECK(ts.dim(k.first, k.second) == v + t0.dim(k.first, k.second + 3));
  }
  /* pd is shift- and sum-invariant */
  CHECK(projective_dimension(resolve(M.shifted(3), {4, 20})) == Bound::exact(2));
  CHECK(projective_dimension(resolve(GradedModule::direct_sum(M, M.shifted(3)), {4, 20})) ==
        Bound::exact(2));
}

TEST_CASE("grade of a free summand is zero, torsion pushes it up") {
  auto S = make(FieldSpec::Q(), {{"t", 2}}, {});
  GradedModule T(S, {{"m", 0}}, {{{{3}, 0, S->field().one()}}});
  CHECK(grade(resolve(T, {4, 16})) == Bound::exact(1));
  GradedModule mix = GradedModule::direct_sum(T, GradedModule::free_module(S, {{"e", 0}}));
  CHECK(grade(resolve(mix, {4, 16})) == Bound::exact(0));
}

TEST_CASE("zero module") {
  auto S = make(FieldSpec::Q(), {{"t", 2}}, {});
  GradedModule Z(S, {{"m", 0}}, {{{{0}, 0, S->field().one()}}}); /* m = 0 */
  Resolution r = resolve(Z, {3, 10});
  CHECK(r.terminated());
  CHECK(r.termination_step() == 0);
  CHECK(projective_dimension(r) == Bound::exact(-1));
  TorTable t = tor_table(r);
  CHECK(t.entries.empty());
}
