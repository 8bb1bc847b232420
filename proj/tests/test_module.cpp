#include <doctest.h>

#include <random>

#include "lvl/module.hpp"

using namespace lvl;

namespace {

AlgebraPtr make(FieldSpec f, std::vector<Generator> gens, std::vector<Exponents> rels,
                bool char2_override = false) {
  return std::make_shared<GradedAlgebra>(f, std::move(gens), std::move(rels), char2_override);
}

Mat dense_action_of_mono(const GradedModule& m, const Exponents& mono, int d) {
  /* independent route: multiply each quotient basis element in the cover */
  const FieldSpec& f = m.alg()->field();
  int dd = d + m.alg()->mono_degree(mono);
  const auto& cols = m.quotient_cols(d);
  const auto& fb = m.cover().basis(d);
  Mat out(f, m.dim(dd), m.dim(d));
  for (size_t j = 0; j < cols.size(); ++j) {
    ModElement img =
        m.cover().mul_mono(mono, {{fb[cols[j]].mono, fb[cols[j]].gen, f.one()}});
    auto q = m.to_quotient(img, dd);
    for (size_t i = 0; i < q.size(); ++i) out.add_to(static_cast<int>(i), static_cast<int>(j), q[i]);
  }
  return out;
}

bool mat_eq(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (!a.field().eq(a.get(r, c), b.get(r, c))) return false;
  return true;
}

}  // namespace

TEST_CASE("free module bases, coordinates, degrees") {
  auto A = make(FieldSpec::Q(), {{"t", 2}}, {{3}});
  FreeModule F(A, {0, 3});
  CHECK(F.lowest_degree() == 0);
  std::vector<int> dims;
  for (int d = 0; d <= 7; ++d) dims.push_back(F.dim(d));
  CHECK(dims == std::vector<int>{1, 0, 1, 1, 1, 1, 0, 1});
  CHECK(F.basis(5).size() == 1);
  CHECK(F.basis(5)[0].gen == 1);
  CHECK(F.basis(5)[0].mono == Exponents{1});
  CHECK(F.index(5, {1}, 1) == 0);
  CHECK(F.index(5, {1}, 0) == -1);

  ModElement v = {{{2}, 0, A->field().one()}, {{0}, 1, A->field().from_int(5)}};
  v = F.canonical(std::move(v));
  CHECK(F.dim(4) == 1);
  CHECK_THROWS(F.coords(v, 4)); /* v is not homogeneous of degree 4 */
  CHECK(*F.degree({{{2}, 0, A->field().one()}}) == 4);
  CHECK_THROWS_AS(F.degree(v), SchemaError);
  CHECK(!F.degree({}).has_value());

  ModElement w = {{{1}, 1, A->field().one()}};
  CHECK(F.from_coords(5, F.coords(w, 5)) == w);
}

TEST_CASE("module element multiplication carries the algebra sign") {
  auto L = make(FieldSpec::Q(), {{"a", 1}, {"b", 1}}, {});
  FreeModule F(L, {0});
  const Scalar one = L->field().one();
  ModElement e0 = {{{0, 0}, 0, one}};
  ModElement be = F.mul_mono({0, 1}, e0);
  ModElement abe = F.mul_mono({1, 0}, be);   /* a·(b·e) = ab·e */
  ModElement bae = F.mul_mono({0, 1}, F.mul_mono({1, 0}, e0)); /* b·(a·e) = -ab·e */
  CHECK(abe == ModElement{{{1, 1}, 0, one}});
  CHECK(bae == F.scale(L->field().from_int(-1), abe));
  CHECK(F.mul_mono({1, 0}, F.mul_mono({1, 0}, e0)).empty()); /* a^2 = 0 */

  /* canonical merges duplicates and drops zeros */
  ModElement dup = {{{1, 0}, 0, one}, {{1, 0}, 0, L->field().from_int(-1)}};
  CHECK(F.canonical(dup).empty());

  Element ab = L->el_mul(L->el_gen(0), L->el_gen(1));
  CHECK(F.mul_element(ab, e0) == abe);
}

TEST_CASE("presented modules: quotient dimensions and actions") {
  auto A = make(FieldSpec::Q(), {{"t", 2}}, {});
  /* M = A/(t^2) */
  GradedModule M(A, {{"m", 0}}, {{{{2}, 0, A->field().one()}}});
  CHECK(M.dim(0) == 1);
  CHECK(M.dim(2) == 1);
  CHECK(M.dim(4) == 0);
  Mat t0 = M.action(0, 0);
  CHECK(t0.rows() == 1);
  CHECK(t0.cols() == 1);
  CHECK(A->field().is_one(t0.get(0, 0)));
  CHECK(M.action(0, 2).rows() == 0);

  /* trivial module: all generators act as zero */
  auto B = make(FieldSpec::Fp(5), {{"x", 2}, {"y", 3}}, {{4, 0}});
  GradedModule k2 = GradedModule::trivial_module(B, {{"u", 0}, {"v", 0}});
  CHECK(k2.dim(0) == 2);
  CHECK(k2.dim(2) == 0);
  CHECK(k2.dim(3) == 0);

  /* free module over B: dims match the cover */
  GradedModule FB = GradedModule::free_module(B, {{"e", 1}});
  for (int d = 0; d <= 9; ++d) CHECK(FB.dim(d) == FB.cover().dim(d));

  /* relations referencing bad generators or mixed degrees are rejected */
  CHECK_THROWS_AS(GradedModule(A, {{"m", 0}}, {{{{1}, 1, A->field().one()}}}), SchemaError);
  CHECK_THROWS_AS(GradedModule(A, {{"m", 0}, {"n", 1}},
                               {{{{1}, 0, A->field().one()}, {{0}, 1, A->field().one()}}}),
                  SchemaError);
}

TEST_CASE("module action matrices agree with cover-side multiplication") {
  std::mt19937 rng(7781);
  for (int trial = 0; trial < 12; ++trial) {
    auto A = make(FieldSpec::Fp(3), {{"a", 1}, {"t", 2}}, {{0, static_cast<int>(2 + rng() % 3)}});
    std::vector<ModGen> gens = {{"p", 0}, {"q", static_cast<int>(rng() % 3)}};
    /* random homogeneous relations */
    std::vector<ModElement> rels;
    FreeModule cover(A, {gens[0].degree, gens[1].degree});
    for (int r = 0; r < 2; ++r) {
      int d = 1 + static_cast<int>(rng() % 5);
      ModElement e;
      for (auto& bt : cover.basis(d))
        e.push_back({bt.mono, bt.gen, A->field().from_int(static_cast<long>(rng() % 3))});
      e = cover.canonical(std::move(e));
      if (!e.empty()) rels.push_back(e);
    }
    GradedModule M(A, gens, rels);
    for (int d = 0; d <= 6; ++d)
      for (int g = 0; g < A->num_gens(); ++g) {
        Exponents xg(A->num_gens(), 0);
        xg[g] = 1;
        CHECK(mat_eq(M.action(g, d), dense_action_of_mono(M, xg, d)));
      }
    /* composed actions match monomial multiplication, signs included */
    PresentedView view(std::make_shared<const GradedModule>(M));
    for (int d = 0; d <= 4; ++d)
      for (auto& mono : std::vector<Exponents>{{1, 1}, {0, 2}, {1, 2}})
        CHECK(mat_eq(monomial_action(view, mono, d), dense_action_of_mono(M, mono, d)));
  }
}

TEST_CASE("shift and direct sum") {
  auto A = make(FieldSpec::Q(), {{"t", 2}}, {{3}});
  GradedModule M(A, {{"m", 0}}, {{{{2}, 0, A->field().one()}}});
  GradedModule S = M.shifted(3);
  for (int d = -1; d <= 6; ++d) CHECK(S.dim(d) == M.dim(d + 3));
  CHECK(S.lowest_degree() == -3);
  CHECK(mat_eq(S.action(0, -3), M.action(0, 0)));

  GradedModule D = GradedModule::direct_sum(M, S);
  for (int d = -3; d <= 6; ++d) CHECK(D.dim(d) == M.dim(d) + S.dim(d));

  auto B = make(FieldSpec::Fp(2), {{"t", 2}}, {{3}});
  CHECK_THROWS_AS(GradedModule::direct_sum(M, GradedModule::free_module(B, {{"e", 0}})),
                  SchemaError);
}

TEST_CASE("minimal generators") {
  auto A = make(FieldSpec::Q(), {{"t", 2}}, {{3}});
  GradedModule F = GradedModule::free_module(A, {{"e0", 0}, {"e1", 3}});
  PresentedView vF(std::make_shared<const GradedModule>(F));
  auto mg = minimal_generators(vF, 12);
  CHECK(mg == std::vector<std::pair<int, int>>{{0, 0}, {3, 0}});

  GradedModule K = GradedModule::trivial_module(A, {{"u", 0}, {"v", 0}});
  PresentedView vK(std::make_shared<const GradedModule>(K));
  CHECK(minimal_generators(vK, 8) == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}});

  /* A as a module over itself is cyclic */
  GradedModule AA = GradedModule::free_module(A, {{"1", 0}});
  PresentedView vA(std::make_shared<const GradedModule>(AA));
  CHECK(minimal_generators(vA, 8) == std::vector<std::pair<int, int>>{{0, 0}});
}

TEST_CASE("extract_presentation reproduces a minimal presentation") {
  auto A = make(FieldSpec::Q(), {{"t", 2}}, {});
  GradedModule M(A, {{"m", 0}}, {{{{2}, 0, A->field().one()}}});
  PresentedView v(std::make_shared<const GradedModule>(M));
  GradedModule E = extract_presentation(v, 14);
  REQUIRE(E.gens().size() == 1);
  CHECK(E.gens()[0].degree == 0);
  REQUIRE(E.relations().size() == 1);
  CHECK(*E.cover().degree(E.relations()[0]) == 4);
  for (int d = 0; d <= 14; ++d) CHECK(E.dim(d) == M.dim(d));

  /* randomized: extraction preserves degreewise dims and action ranks */
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 8; ++trial) {
    auto B = make(FieldSpec::Fp(5), {{"x", 2}, {"y", 3}}, {{3, 0}});
    FreeModule cover(B, {0, 1});
    std::vector<ModElement> rels;
    for (int r = 0; r < 3; ++r) {
      int d = 2 + static_cast<int>(rng() % 4);
      ModElement e;
      for (auto& bt : cover.basis(d))
        e.push_back({bt.mono, bt.gen, B->field().from_int(static_cast<long>(rng() % 5))});
      e = cover.canonical(std::move(e));
      if (!e.empty()) rels.push_back(e);
    }
    GradedModule M2(B, {{"p", 0}, {"q", 1}}, rels);
    PresentedView v2(std::make_shared<const GradedModule>(M2));
    GradedModule E2 = extract_presentation(v2, 12);
    for (int d = 0; d <= 12; ++d) {
      CHECK(E2.dim(d) == M2.dim(d));
      for (int g = 0; g < B->num_gens(); ++g)
        CHECK(E2.action(g, d).rank() == M2.action(g, d).rank());
    }
  }
}

TEST_CASE("restriction of scalars") {
  /* k[t] over k[u], u -> t^2: free of rank 2 on degrees 0, 2 */
  auto kt = make(FieldSpec::Q(), {{"t", 2}}, {});
  auto ku = make(FieldSpec::Q(), {{"u", 4}}, {});
  AlgebraMap phi(ku, kt, {kt->el_pow(kt->el_gen(0), 2)});
  GradedModule T = GradedModule::free_module(kt, {{"1", 0}});
  GradedModule R = restrict_module(phi, T, 20);
  REQUIRE(R.gens().size() == 2);
  CHECK(R.gens()[0].degree == 0);
  CHECK(R.gens()[1].degree == 2);
  CHECK(R.relations().empty());
  for (int d = 0; d <= 20; ++d) CHECK(R.dim(d) == T.dim(d));
  /* u acts with full rank everywhere (freeness) */
  for (int d = 0; d <= 12; d += 2) CHECK(R.action(0, d).rank() == R.dim(d));

  /* k[t]/(t^2) over k[u]: u acts as zero, so the restriction is trivial */
  GradedModule T2(kt, {{"1", 0}}, {{{{2}, 0, kt->field().one()}}});
  GradedModule R2 = restrict_module(phi, T2, 20);
  REQUIRE(R2.gens().size() == 2);
  CHECK(R2.action(0, 0).rank() == 0);
  CHECK(R2.dim(4) == 0);

  /* restriction along the zero map: everything is a generator */
  AlgebraMap zero = AlgebraMap::zero(ku, kt);
  GradedModule T4(kt, {{"1", 0}}, {{{{4}, 0, kt->field().one()}}});
  GradedModule R4 = restrict_module(zero, T4, 20);
  CHECK(R4.gens().size() == 4);
  CHECK(R4.relations().size() == 4);
}

TEST_CASE("explicit degreewise modules") {
  auto A = make(FieldSpec::Q(), {{"t", 2}}, {});
  ExplicitModule E(A, 0, 6);
  E.set_dim(0, 1);
  E.set_dim(2, 1);
  Mat m(A->field(), 1, 1);
  m.add_to(0, 0, A->field().one());
  E.set_action(0, 0, m);
  CHECK(E.dim(-3) == 0);
  CHECK(E.dim(4) == 0);
  CHECK_THROWS(E.dim(7));
  CHECK(E.action(0, 2).rows() == 0); /* unset: zero map with correct shape */
  CHECK(E.action(0, 0).rows() == 1);

  auto mg = minimal_generators(E, 6);
  CHECK(mg == std::vector<std::pair<int, int>>{{0, 0}});
  GradedModule P = extract_presentation(E, 6);
  REQUIRE(P.gens().size() == 1);
  REQUIRE(P.relations().size() == 1); /* t^2 kills the generator within the window */
  CHECK(*P.cover().degree(P.relations()[0]) == 4);
}
