#include <doctest.h>

#include <random>

#include "lvl/koszul.hpp"
#include "lvl/simplicial.hpp"

using namespace lvl;

namespace {

using Entries = std::map<std::pair<int, int>, int>;

AlgebraPtr poly(const FieldSpec& f, std::vector<std::pair<std::string, int>> gens) {
  std::vector<Generator> gs;
  for (auto& [n, d] : gens) gs.push_back({n, d});
  return std::make_shared<GradedAlgebra>(f, gs, std::vector<Exponents>{});
}

AlgebraPtr truncated(const FieldSpec& f, const std::string& name, int deg, int power) {
  Exponents rel{power};
  return std::make_shared<GradedAlgebra>(f, std::vector<Generator>{{name, deg}},
                                         std::vector<Exponents>{rel});
}

AlgebraPtr point_algebra(const FieldSpec& f) {
  return std::make_shared<GradedAlgebra>(f, std::vector<Generator>{}, std::vector<Exponents>{});
}

std::shared_ptr<const GradedModule> share(GradedModule m) {
  return std::make_shared<const GradedModule>(std::move(m));
}

/* Stanley-Reisner quotient of k[t_1..t_n] (|t_i| = 2) as a cyclic module. */
std::shared_ptr<const GradedModule> sr_module(const SimplicialComplex& K, const FieldSpec& f) {
  std::vector<std::pair<std::string, int>> gens;
  for (int v = 0; v < K.n_vertices(); ++v) gens.push_back({"t" + std::to_string(v + 1), 2});
  auto S = poly(f, gens);
  std::vector<ModElement> rels;
  for (auto& nf : K.minimal_non_faces()) {
    Exponents e(K.n_vertices(), 0);
    for (int v : nf) e[v] = 1;
    rels.push_back({{e, 0, f.one()}});
  }
  return share(GradedModule(S, {{"m", 0}}, rels));
}

/* Random quotient of a free module over k[t_1..t_v] by monomial relations. */
std::shared_ptr<const GradedModule> random_module(std::mt19937& rng, const FieldSpec& f, int v) {
  std::vector<std::pair<std::string, int>> pg;
  for (int i = 0; i < v; ++i) pg.push_back({"t" + std::to_string(i + 1), 2 + 2 * (int)(rng() % 2)});
  auto A = poly(f, pg);
  int ng = 1 + (int)(rng() % 2);
  std::vector<ModGen> gens;
  for (int g = 0; g < ng; ++g) gens.push_back({"e" + std::to_string(g), (int)(rng() % 3)});
  int nr = (int)(rng() % 4);
  std::vector<ModElement> rels;
  for (int r = 0; r < nr; ++r) {
    Exponents e(v, 0);
    for (int i = 0; i < v; ++i) e[i] = (int)(rng() % 3);
    rels.push_back({{e, (int)(rng() % ng), f.one()}});
  }
  return share(GradedModule(A, gens, rels));
}

}  // namespace

TEST_CASE("koszul tor: pinned small cases") {
  for (auto f : {FieldSpec::Fp(2), FieldSpec::Q()}) {
    auto A = poly(f, {{"u", 4}});
    auto K = share(GradedModule::trivial_module(A, {{"m", 0}}));
    TorTable t = koszul_tor(K, 8);
    CHECK(t.terminated);
    CHECK(t.bounds.n_max == 1);
    CHECK(t.bounds.d_max == 8);
    CHECK(t.entries == Entries{{{0, 0}, 1}, {{1, 4}, 1}});

    auto F = share(GradedModule::free_module(A, {{"m", 0}}));
    CHECK(koszul_tor(F, 8).entries == Entries{{{0, 0}, 1}});
  }
}

TEST_CASE("koszul tor: refuses non-polynomial bases") {
  auto f = FieldSpec::Q();
  auto T = truncated(f, "x", 2, 2);
  auto M = share(GradedModule::trivial_module(T, {{"m", 0}}));
  CHECK_THROWS_WITH_AS(koszul_tor(M, 6), "Koszul path requires polynomial base; use resolve",
                       HypothesisError);

  auto E = std::make_shared<GradedAlgebra>(f, std::vector<Generator>{{"x", 3}},
                                           std::vector<Exponents>{});
  auto N = share(GradedModule::trivial_module(E, {{"m", 0}}));
  CHECK_THROWS_AS(koszul_tor(N, 6), HypothesisError);
}

TEST_CASE("koszul tor agrees with hochster and with the resolution route on the 4-cycle") {
  SimplicialComplex K(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  for (auto f : {FieldSpec::Fp(2), FieldSpec::Fp(3), FieldSpec::Q()}) {
    auto M = sr_module(K, f);
    TorTable kz = koszul_tor(M, 8);
    TorTable ho = hochster_tor(K, f);
    CHECK(kz.entries == ho.entries);
    PresentedView view(M);
    TorTable rs = tor_table(view, {4, 8});
    CHECK(rs.terminated);
    CHECK(kz.entries == rs.entries);
    CHECK(kz.total_dim(0) == 1);
    CHECK(kz.total_dim(1) == 2);
    CHECK(kz.total_dim(2) == 1);
  }
}

TEST_CASE("koszul tor matches resolution tor on random monomial quotients") {
  std::mt19937 rng(77);
  for (auto f : {FieldSpec::Fp(2), FieldSpec::Fp(5), FieldSpec::Q()}) {
    for (int trial = 0; trial < 6; ++trial) {
      int v = 1 + (int)(rng() % 3);
      auto M = random_module(rng, f, v);
      TorTable kz = koszul_tor(M, 10);
      PresentedView view(M);
      TorTable rs = tor_table(view, {v, 10});
      CHECK(rs.terminated);
      CHECK(kz.entries == rs.entries);
    }
  }
}

TEST_CASE("koszul complex differential squares to zero") {
  std::mt19937 rng(11);
  auto f = FieldSpec::Fp(3);
  for (int trial = 0; trial < 4; ++trial) {
    auto M = random_module(rng, f, 1 + (int)(rng() % 3));
    KoszulComplex C(M, 8);
    for (int j = C.j_lo(); j <= 8; ++j) CHECK(C.square_zero(j));
  }
}

TEST_CASE("koszul tor: parallel sweep equals the serial reference") {
  std::mt19937 rng(5);
  auto f = FieldSpec::Q();
  for (int trial = 0; trial < 3; ++trial) {
    auto M = random_module(rng, f, 3);
    TorTable a = koszul_tor(M, 10);
    TorTable b = koszul_tor_serial(M, 10);
    CHECK(a.entries == b.entries);
    CHECK(a.terminated == b.terminated);
  }
}

TEST_CASE("derived tensor: Hopf instance over the 4-sphere") {
  for (auto f : {FieldSpec::Fp(2), FieldSpec::Fp(7), FieldSpec::Q()}) {
    auto E = point_algebra(f);
    auto B = poly(f, {{"u", 4}});
    auto X = truncated(f, "x", 4, 2);
    AlgebraMap q = AlgebraMap::zero(B, E);
    AlgebraMap phi(B, X, {X->el_gen(0)});
    auto dt = DerivedTensor::of_maps(E, B, X, q, phi, 12);

    CHECK(dt->square_zero(8));
    /* the lone letter maps onto -x */
    Mat d14 = dt->delta(1, 4);
    REQUIRE(d14.rows() == 1);
    REQUIRE(d14.cols() == 1);
    CHECK(f.eq(d14.get(0, 0), f.neg(f.one())));

    Entries expect{{{0, 0}, 1}, {{-1, 8}, 1}};
    CHECK(dt->homology_table() == expect);
    CHECK(dt->homology_table_serial() == expect);

    /* homology as a module over H*(X): k in total degrees 0 and 7, x acting by 0 */
    GradedModule H = dt->homology_presentation(10);
    REQUIRE(H.gens().size() == 2);
    CHECK(H.gens()[0].degree == 0);
    CHECK(H.gens()[1].degree == 7);
    std::vector<int> hl = H.hilbert(0, 10);
    std::vector<int> want(11, 0);
    want[0] = 1;
    want[7] = 1;
    CHECK(hl == want);
  }
}

TEST_CASE("derived tensor: zero structure maps give the free answer") {
  auto f = FieldSpec::Fp(3);
  auto E = point_algebra(f);
  auto B = poly(f, {{"u4", 4}, {"u6", 6}});
  auto X = truncated(f, "x", 4, 2);
  auto dt = DerivedTensor::of_maps(E, B, X, AlgebraMap::zero(B, E), AlgebraMap::zero(B, X), 14);
  Entries expect{{{0, 0}, 1},   {{0, 4}, 1},   {{-1, 4}, 1},  {{-1, 6}, 1},
                 {{-1, 8}, 1},  {{-1, 10}, 1}, {{-2, 10}, 1}, {{-2, 14}, 1}};
  CHECK(dt->homology_table() == expect);

  /* free over H*(X) on the exterior words, in total degrees 0, 3, 5, 8 */
  GradedModule H = dt->homology_presentation(12);
  CHECK(H.relations().empty());
  std::vector<int> gd;
  for (auto& g : H.gens()) gd.push_back(g.degree);
  CHECK(gd == std::vector<int>{0, 3, 5, 8});
}

TEST_CASE("derived tensor: loop-space form with one nonzero weight") {
  auto f = FieldSpec::Fp(5);
  auto X = truncated(f, "x", 4, 2);
  SUBCASE("unit weight: the first letter cancels the socle") {
    auto dt =
        DerivedTensor::of_loop_weights(X, {4, 6}, {X->el_scale(f.from_int(3), X->el_gen(0)),
                                                   X->el_zero()},
                                       16);
    for (int j = 0; j <= 16; ++j) CHECK(dt->square_zero(j));
    Entries expect{{{0, 0}, 1}, {{-1, 6}, 1}, {{-1, 8}, 1}, {{-2, 14}, 1}};
    CHECK(dt->homology_table() == expect);
  }
  SUBCASE("weight divisible by p: differential vanishes, answer is free") {
    auto dt = DerivedTensor::of_loop_weights(
        X, {4, 6}, {X->el_scale(f.from_int(5), X->el_gen(0)), X->el_zero()}, 16);
    Entries expect{{{0, 0}, 1},   {{0, 4}, 1},   {{-1, 4}, 1},  {{-1, 6}, 1},
                   {{-1, 8}, 1},  {{-1, 10}, 1}, {{-2, 10}, 1}, {{-2, 14}, 1}};
    CHECK(dt->homology_table() == expect);
  }
}

TEST_CASE("derived tensor: flag-variety instances have free-module homology") {
  auto f = FieldSpec::Q();
  SUBCASE("rank one: H*(SU(2)/T)") {
    auto E = poly(f, {{"t", 2}});
    auto B = poly(f, {{"u", 4}});
    auto X = point_algebra(f);
    AlgebraMap q(B, E, {E->el_pow(E->el_gen(0), 2)});
    auto dt = DerivedTensor::of_maps(E, B, X, q, AlgebraMap::zero(B, X), 12);
    CHECK(dt->homology_table() == Entries{{{0, 0}, 1}, {{0, 2}, 1}});
  }
  SUBCASE("rank two: H*(SU(3)/T^2)") {
    auto E = poly(f, {{"t1", 2}, {"t2", 2}});
    auto B = poly(f, {{"u4", 4}, {"u6", 6}});
    auto X = point_algebra(f);
    Element t1 = E->el_gen(0), t2 = E->el_gen(1);
    Element e2 = E->el_add(E->el_add(E->el_pow(t1, 2), E->el_mul(t1, t2)), E->el_pow(t2, 2));
    Element e3 = E->el_mul(E->el_mul(t1, t2), E->el_add(t1, t2));
    Scalar m1 = f.neg(f.one());
    AlgebraMap q(B, E, {E->el_scale(m1, e2), E->el_scale(m1, e3)});
    auto dt = DerivedTensor::of_maps(E, B, X, q, AlgebraMap::zero(B, X), 12);
    CHECK(dt->homology_table() ==
          Entries{{{0, 0}, 1}, {{0, 2}, 2}, {{0, 4}, 2}, {{0, 6}, 1}});
  }
  SUBCASE("torus on both sides: free of rank two over the right factor") {
    auto E = poly(f, {{"t", 2}});
    auto B = poly(f, {{"u", 4}});
    auto X = poly(f, {{"s", 2}});
    AlgebraMap q(B, E, {E->el_pow(E->el_gen(0), 2)});
    AlgebraMap phi(B, X, {X->el_pow(X->el_gen(0), 2)});
    auto dt = DerivedTensor::of_maps(E, B, X, q, phi, 12);
    auto table = dt->homology_table();
    for (auto& [k, v] : table) CHECK(k.first == 0);
    GradedModule H = dt->homology_presentation(8);
    CHECK(H.relations().empty());
    std::vector<int> gd;
    for (auto& g : H.gens()) gd.push_back(g.degree);
    CHECK(gd == std::vector<int>{0, 2});
    PresentedView view(std::make_shared<const GradedModule>(H));
    TorTable t = tor_table(view, {2, 8});
    CHECK(t.terminated);
    CHECK(t.entries == Entries{{{0, 0}, 1}, {{0, 2}, 1}});
  }
}

TEST_CASE("derived tensor: differential squares to zero with mixed multipliers") {
  auto f = FieldSpec::Q();
  SUBCASE("odd exterior class in the right factor") {
    auto E = point_algebra(f);
    auto B = poly(f, {{"u", 4}});
    auto X = std::make_shared<GradedAlgebra>(
        f, std::vector<Generator>{{"x", 3}, {"y", 4}}, std::vector<Exponents>{});
    AlgebraMap phi(B, X, {X->el_gen(1)});
    auto dt = DerivedTensor::of_maps(E, B, X, AlgebraMap::zero(B, E), phi, 12);
    for (int j = 0; j <= 12; ++j) CHECK(dt->square_zero(j));
    CHECK(dt->homology_table() == Entries{{{0, 0}, 1}, {{0, 3}, 1}});
  }
  SUBCASE("both sides act through two letters") {
    auto E = poly(f, {{"t", 2}});
    auto B = poly(f, {{"u4", 4}, {"u6", 6}});
    auto X = truncated(f, "x", 2, 4);
    AlgebraMap q(B, E, {E->el_pow(E->el_gen(0), 2), E->el_pow(E->el_gen(0), 3)});
    AlgebraMap phi(B, X, {X->el_pow(X->el_gen(0), 2), X->el_pow(X->el_gen(0), 3)});
    auto dt = DerivedTensor::of_maps(E, B, X, q, phi, 14);
    for (int j = 0; j <= 14; ++j) CHECK(dt->square_zero(j));
    CHECK(dt->homology_table() == dt->homology_table_serial());
  }
}

TEST_CASE("koszul filtration: Hopf instance, no letters absorbed") {
  auto f = FieldSpec::Q();
  auto E = point_algebra(f);
  auto B = poly(f, {{"u", 4}});
  auto X = truncated(f, "x", 4, 2);
  AlgebraMap phi(B, X, {X->el_gen(0)});
  auto dt = DerivedTensor::of_maps(E, B, X, AlgebraMap::zero(B, E), phi, 12);

  FiltrationCertificate cert = koszul_filtration(dt, {});
  CHECK(cert.filtration_class == 1);
  CHECK(cert.steps() == 2);
  CHECK(cert.ground == X);

  FiltrationCheck chk = check_semifree_filtration(cert, 12);
  CHECK(chk.ok);
  CHECK(chk.verified_class == 1);
  REQUIRE(chk.subquotients.size() == 2);
  CHECK(chk.subquotients[0].rank == 1);
  CHECK(chk.subquotients[0].shift_degrees == std::vector<int>{0});
  CHECK(chk.subquotients[1].rank == 1);
  CHECK(chk.subquotients[1].shift_degrees == std::vector<int>{3});

  SUBCASE("corrupting the certificate is detected with a closure witness") {
    FiltrationCertificate bad = cert;
    bad.step_words[0].clear();
    FiltrationCheck c2 = check_semifree_filtration(bad, 12);
    CHECK(!c2.ok);
    CHECK(c2.witness.find("not closed") != std::string::npos);
  }
  SUBCASE("letters with nonzero phi* image cannot be absorbed") {
    CHECK_THROWS_AS(koszul_filtration(dt, {0}), HypothesisError);
  }
}

TEST_CASE("koszul filtration: absorbed letters shrink the class") {
  auto f = FieldSpec::Fp(3);
  auto E = point_algebra(f);
  auto B = poly(f, {{"u4", 4}, {"u6", 6}});
  auto X = truncated(f, "x", 4, 2);
  auto dt = DerivedTensor::of_maps(E, B, X, AlgebraMap::zero(B, E), AlgebraMap::zero(B, X), 14);

  SUBCASE("all letters absorbed: class zero, rank four") {
    FiltrationCertificate cert = koszul_filtration(dt, {0, 1});
    CHECK(cert.filtration_class == 0);
    FiltrationCheck chk = check_semifree_filtration(cert, 14);
    CHECK(chk.ok);
    CHECK(chk.verified_class == 0);
    REQUIRE(chk.subquotients.size() == 1);
    CHECK(chk.subquotients[0].rank == 4);
    CHECK(chk.subquotients[0].shift_degrees == std::vector<int>{0, 3, 5, 8});
  }
  SUBCASE("one letter absorbed: class one") {
    FiltrationCertificate cert = koszul_filtration(dt, {0});
    CHECK(cert.filtration_class == 1);
    FiltrationCheck chk = check_semifree_filtration(cert, 14);
    CHECK(chk.ok);
    REQUIRE(chk.subquotients.size() == 2);
    CHECK(chk.subquotients[0].rank == 2);
    CHECK(chk.subquotients[0].shift_degrees == std::vector<int>{0, 3});
    CHECK(chk.subquotients[1].rank == 2);
    CHECK(chk.subquotients[1].shift_degrees == std::vector<int>{5, 8});
  }
}

TEST_CASE("koszul filtration: randomized instances verify at class m - |gamma|") {
  std::mt19937 rng(901);
  for (auto f : {FieldSpec::Fp(2), FieldSpec::Q()}) {
    for (int trial = 0; trial < 4; ++trial) {
      auto E = (rng() % 2) ? point_algebra(f) : truncated(f, "t", 2, 2);
      auto B = poly(f, {{"u4", 4}, {"u6", 6}});
      auto X = truncated(f, "x", 2, 4);
      AlgebraMap q = AlgebraMap::zero(B, E);
      bool u4_zero = (rng() % 2) != 0;
      AlgebraMap phi(B, X,
                     {u4_zero ? X->el_zero() : X->el_pow(X->el_gen(0), 2),
                      X->el_zero()});
      auto dt = DerivedTensor::of_maps(E, B, X, q, phi, 12);
      std::vector<int> gamma{1};
      if (u4_zero && (rng() % 2)) gamma.push_back(0);
      FiltrationCertificate cert = koszul_filtration(dt, gamma);
      CHECK(cert.filtration_class == 2 - (int)gamma.size());
      FiltrationCheck chk = check_semifree_filtration(cert, 12);
      CHECK(chk.ok);
      CHECK(chk.verified_class == cert.filtration_class);
    }
  }
}

TEST_CASE("koszul filtration: infinite-dimensional left factor records a caveat") {
  auto f = FieldSpec::Q();
  auto E = poly(f, {{"t", 2}});
  auto B = poly(f, {{"u", 4}});
  auto X = truncated(f, "x", 2, 4);
  AlgebraMap q(B, E, {E->el_pow(E->el_gen(0), 2)});
  AlgebraMap phi(B, X, {X->el_pow(X->el_gen(0), 2)});
  auto dt = DerivedTensor::of_maps(E, B, X, q, phi, 10);
  FiltrationCertificate cert = koszul_filtration(dt, {});
  CHECK(!cert.caveats.empty());
  FiltrationCheck chk = check_semifree_filtration(cert, 10);
  CHECK(chk.ok);
  CHECK(chk.verified_class == 1);
}

TEST_CASE("trivial action test") {
  auto f = FieldSpec::Q();
  SUBCASE("structure map lands in a point: trivial") {
    auto E = point_algebra(f);
    auto B = poly(f, {{"u", 4}});
    TrivialActionReport r = trivial_action_test(E, B, AlgebraMap::zero(B, E), {}, 10);
    CHECK(r.trivial);
    CHECK(r.witnesses.empty());
  }
  SUBCASE("identity action is detected") {
    auto B = poly(f, {{"u", 4}});
    TrivialActionReport r = trivial_action_test(B, B, AlgebraMap::identity(B), {}, 10);
    CHECK(!r.trivial);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses[0].first == 0);
    CHECK(r.witnesses[0].second == std::pair<int, int>{0, 0});
  }
  SUBCASE("square of the torus class acts nontrivially until absorbed") {
    auto E = poly(f, {{"t", 2}});
    auto B = poly(f, {{"u", 4}});
    AlgebraMap q(B, E, {E->el_pow(E->el_gen(0), 2)});
    TrivialActionReport r0 = trivial_action_test(E, B, q, {}, 10);
    CHECK(!r0.trivial);
    TrivialActionReport r1 = trivial_action_test(E, B, q, {0}, 10);
    CHECK(r1.trivial);
  }
}

TEST_CASE("freeness witnesses and restriction of scalars") {
  auto f = FieldSpec::Q();
  auto E = point_algebra(f);
  auto B = poly(f, {{"u", 4}});
  auto X = poly(f, {{"t", 2}});
  AlgebraMap phi(B, X, {X->el_pow(X->el_gen(0), 2)});
  auto dt = DerivedTensor::of_maps(E, B, X, AlgebraMap::zero(B, E), phi, 12);
  FiltrationCertificate cert = koszul_filtration(dt, {});
  CHECK(cert.filtration_class == 1);

  FiltrationCheck over_x = check_semifree_filtration(cert, 12);
  CHECK(over_x.ok);
  CHECK(over_x.subquotients[0].rank == 1);
  CHECK(over_x.subquotients[0].shift_degrees == std::vector<int>{0});
  CHECK(over_x.subquotients[1].rank == 1);
  CHECK(over_x.subquotients[1].shift_degrees == std::vector<int>{3});

  SUBCASE("restricting along u -> t^2 doubles the subquotient ranks") {
    FreenessWitness w{AlgebraMap(B, X, {X->el_pow(X->el_gen(0), 2)}),
                      {X->el_one(), X->el_gen(0)}};
    verify_freeness_witness(w, 12);
    FiltrationCertificate down = restrict_scalars_certificate(cert, w, 12);
    CHECK(down.ground == B);
    CHECK(down.filtration_class == 1);
    FiltrationCheck chk = check_semifree_filtration(down, 12);
    CHECK(chk.ok);
    CHECK(chk.verified_class == 1);
    CHECK(chk.subquotients[0].rank == 2);
    CHECK(chk.subquotients[0].shift_degrees == std::vector<int>{0, 2});
    CHECK(chk.subquotients[1].rank == 2);
    CHECK(chk.subquotients[1].shift_degrees == std::vector<int>{3, 5});
  }
  SUBCASE("identity witness changes nothing") {
    FreenessWitness w{AlgebraMap::identity(X), {X->el_one()}};
    FiltrationCertificate same = restrict_scalars_certificate(cert, w, 12);
    CHECK(same.ground == X);
    FiltrationCheck chk = check_semifree_filtration(same, 12);
    CHECK(chk.ok);
    CHECK(chk.subquotients[0].rank == 1);
  }
  SUBCASE("an incomplete basis is rejected at the first failing degree") {
    FreenessWitness w{AlgebraMap(B, X, {X->el_pow(X->el_gen(0), 2)}), {X->el_one()}};
    try {
      verify_freeness_witness(w, 12);
      CHECK(false);
    } catch (const HypothesisError& e) {
      CHECK(std::string(e.what()).find("degree 2") != std::string::npos);
    }
  }
}
