#include <doctest.h>

#include <random>

#include "lvl/simplicial.hpp"

using namespace lvl;

namespace {

using Entries = std::map<std::pair<int, int>, int>;

SimplicialComplex four_cycle() { return SimplicialComplex(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

/* minimal 6-vertex triangulation of the real projective plane (1-skeleton = K6) */
SimplicialComplex rp2_6() {
  return SimplicialComplex(6, {{0, 1, 4},
                               {0, 1, 5},
                               {0, 2, 3},
                               {0, 2, 5},
                               {0, 3, 4},
                               {1, 2, 3},
                               {1, 2, 4},
                               {1, 3, 5},
                               {2, 4, 5},
                               {3, 4, 5}});
}

SimplicialComplex random_complex(std::mt19937& rng, int n, int n_facets) {
  std::vector<std::vector<int>> fs;
  for (int i = 0; i < n_facets; ++i) {
    uint32_t m = static_cast<uint32_t>(rng()) & ((1u << n) - 1);
    std::vector<int> fc;
    for (int v = 0; v < n; ++v)
      if (m & (1u << v)) fc.push_back(v);
    if (!fc.empty()) fs.push_back(fc);
  }
  return SimplicialComplex(n, fs);
}

/* Tor over the ambient polynomial ring of the Stanley-Reisner quotient,
   via a minimal free resolution: the independent route to the same table. */
TorTable sr_resolution_tor(const SimplicialComplex& K, const FieldSpec& f) {
  std::vector<Generator> gens;
  for (int v = 0; v < K.n_vertices(); ++v) gens.push_back({"t" + std::to_string(v + 1), 2});
  auto S = std::make_shared<GradedAlgebra>(f, gens, std::vector<Exponents>{});
  std::vector<ModElement> rels;
  for (auto& nf : K.minimal_non_faces()) {
    Exponents e(K.n_vertices(), 0);
    for (int v : nf) e[v] = 1;
    rels.push_back({{e, 0, f.one()}});
  }
  GradedModule M(S, {{"m", 0}}, rels);
  PresentedView view(std::make_shared<const GradedModule>(M));
  return tor_table(view, {K.n_vertices(), 2 * K.n_vertices()});
}

}  // namespace

TEST_CASE("complex normalization, faces, validation") {
  SimplicialComplex K(4, {{0, 1}, {1, 0}, {1}, {2, 3}, {3}});
  CHECK(K.facets() == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
  CHECK(K.dimension() == 1);
  CHECK(K.is_face(std::vector<int>{1}));
  CHECK(K.is_face(std::vector<int>{}));
  CHECK(!K.is_face(std::vector<int>{0, 2}));
  CHECK(K.faces_of_card(1).size() == 4);
  CHECK(K.faces_of_card(2).size() == 2);
  CHECK(K.faces_of_card(0) == std::vector<uint32_t>{0});

  CHECK_THROWS_AS(SimplicialComplex(2, {{0, 2}}), SchemaError);
  CHECK_THROWS_AS(SimplicialComplex(2, {{0, 0}}), SchemaError);
  CHECK_THROWS_AS(SimplicialComplex(25, {}), SchemaError);

  SimplicialComplex empty(0, {});
  CHECK(empty.dimension() == -1);
  CHECK(empty.is_face(std::vector<int>{}));
}

TEST_CASE("minimal non-faces") {
  auto mnf = four_cycle().minimal_non_faces();
  CHECK(mnf == std::vector<std::vector<int>>{{0, 2}, {1, 3}});

  SimplicialComplex two_pts(2, {{0}, {1}});
  CHECK(two_pts.minimal_non_faces() == std::vector<std::vector<int>>{{0, 1}});

  /* a vertex not in any facet is itself a minimal non-face */
  SimplicialComplex missing(3, {{0, 1}});
  CHECK(missing.minimal_non_faces() == std::vector<std::vector<int>>{{2}});

  CHECK(SimplicialComplex::full_simplex(3).minimal_non_faces().empty());
}

TEST_CASE("reduced cohomology of known spaces") {
  CHECK(reduced_cohomology(SimplicialComplex::empty_complex(0), FieldSpec::Q()) ==
        std::map<int, int>{{-1, 1}});
  CHECK(reduced_cohomology(SimplicialComplex::empty_complex(3), FieldSpec::Q()) ==
        std::map<int, int>{{-1, 1}});
  CHECK(reduced_cohomology(SimplicialComplex::full_simplex(1), FieldSpec::Q()).empty());
  CHECK(reduced_cohomology(SimplicialComplex::full_simplex(4), FieldSpec::Fp(2)).empty());
  CHECK(reduced_cohomology(SimplicialComplex(2, {{0}, {1}}), FieldSpec::Q()) ==
        std::map<int, int>{{0, 1}});
  CHECK(reduced_cohomology(four_cycle(), FieldSpec::Q()) == std::map<int, int>{{1, 1}});
  CHECK(reduced_cohomology(four_cycle(), FieldSpec::Fp(5)) == std::map<int, int>{{1, 1}});

  /* non-orientable surface: cohomology depends on the field */
  auto rp = rp2_6();
  /* sanity: closed surface with chi = 1 on the complete graph K6 */
  CHECK(rp.facets().size() == 10);
  CHECK(rp.faces_of_card(2).size() == 15);
  for (uint32_t e : rp.faces_of_card(2)) {
    int cnt = 0;
    for (uint32_t fmask : rp.facet_masks())
      if ((e & fmask) == e) ++cnt;
    CHECK(cnt == 2);
  }
  CHECK(reduced_cohomology(rp, FieldSpec::Fp(2)) == std::map<int, int>{{1, 1}, {2, 1}});
  CHECK(reduced_cohomology(rp, FieldSpec::Q()).empty());
  CHECK(reduced_cohomology(rp, FieldSpec::Fp(3)).empty());
  CHECK(reduced_cohomology(rp, FieldSpec::Fp(5)).empty());
}

TEST_CASE("reduced Euler characteristic identity on random complexes") {
  std::mt19937 rng(333);
  for (int trial = 0; trial < 40; ++trial) {
    SimplicialComplex K = random_complex(rng, 2 + static_cast<int>(rng() % 4),
                                         1 + static_cast<int>(rng() % 4));
    long long from_faces = 0;
    for (int c = 0; c <= K.dimension() + 1; ++c) {
      long long s = static_cast<long long>(K.faces_of_card(c).size());
      from_faces += (c % 2 == 0 ? -s : s); /* (-1)^{c-1}, c = k+1 */
    }
    for (auto f : {FieldSpec::Q(), FieldSpec::Fp(2)}) {
      long long from_h = 0;
      for (auto& [k, h] : reduced_cohomology(K, f)) from_h += (k % 2 == 0 ? h : -h);
      CHECK(from_h == from_faces);
    }
  }
}

TEST_CASE("full subcomplexes reindex correctly") {
  auto K = four_cycle();
  SimplicialComplex path = K.full_subcomplex(0b1011); /* vertices 0,1,3 */
  CHECK(path.n_vertices() == 3);
  CHECK(path.facets() == std::vector<std::vector<int>>{{0, 1}, {0, 2}});
  CHECK(reduced_cohomology(path, FieldSpec::Q()).empty());
  SimplicialComplex two = K.full_subcomplex(0b1010); /* vertices 1,3: no edge */
  CHECK(two.facets() == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(reduced_cohomology(two, FieldSpec::Q()) == std::map<int, int>{{0, 1}});
}

TEST_CASE("Hochster tables for pinned complexes") {
  TorTable t = hochster_tor(four_cycle(), FieldSpec::Q());
  CHECK(t.entries == Entries{{{0, 0}, 1}, {{1, 4}, 2}, {{2, 8}, 1}});
  CHECK(t.terminated);
  CHECK(dj_level(four_cycle(), FieldSpec::Q()) == 3);
  CHECK(dj_level(four_cycle(), FieldSpec::Fp(2)) == 3);

  CHECK(hochster_tor(SimplicialComplex(2, {{0}, {1}}), FieldSpec::Q()).entries ==
        Entries{{{0, 0}, 1}, {{1, 4}, 1}});
  CHECK(dj_level(SimplicialComplex(2, {{0}, {1}}), FieldSpec::Q()) == 2);

  CHECK(hochster_tor(SimplicialComplex::full_simplex(3), FieldSpec::Fp(3)).entries ==
        Entries{{{0, 0}, 1}});
  CHECK(dj_level(SimplicialComplex::full_simplex(3), FieldSpec::Fp(3)) == 1);

  CHECK(hochster_tor(SimplicialComplex::empty_complex(0), FieldSpec::Q()).entries ==
        Entries{{{0, 0}, 1}});

  /* moment-angle complex of the 4-cycle is S^3 x S^3 */
  CHECK(moment_angle_cohomology(four_cycle(), FieldSpec::Q()) ==
        std::map<int, int>{{0, 1}, {3, 2}, {6, 1}});
}

TEST_CASE("Hochster equals resolution-side Tor of the Stanley-Reisner quotient") {
  for (auto f : {FieldSpec::Q(), FieldSpec::Fp(2)}) {
    TorTable h = hochster_tor(four_cycle(), f);
    TorTable r = sr_resolution_tor(four_cycle(), f);
    CHECK(h.entries == r.entries);
    CHECK(r.terminated);

    TorTable h2 = hochster_tor(SimplicialComplex(2, {{0}, {1}}), f);
    TorTable r2 = sr_resolution_tor(SimplicialComplex(2, {{0}, {1}}), f);
    CHECK(h2.entries == r2.entries);
  }
  std::mt19937 rng(775);
  for (int trial = 0; trial < 6; ++trial) {
    SimplicialComplex K = random_complex(rng, 4, 1 + static_cast<int>(rng() % 5));
    FieldSpec f = trial % 2 == 0 ? FieldSpec::Q() : FieldSpec::Fp(2);
    CHECK(hochster_tor(K, f).entries == sr_resolution_tor(K, f).entries);
  }
}

TEST_CASE("dj level of the projective plane depends on the field") {
  auto rp = rp2_6();
  CHECK(dj_level(rp, FieldSpec::Fp(2)) == 5);
  CHECK(dj_level(rp, FieldSpec::Q()) == 4);
  CHECK(dj_level(rp, FieldSpec::Fp(3)) == 4);
  CHECK(dj_level(rp, FieldSpec::Fp(7)) == 4);
}

TEST_CASE("serial and parallel Hochster sweeps agree") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    SimplicialComplex K = random_complex(rng, 2 + static_cast<int>(rng() % 5),
                                         1 + static_cast<int>(rng() % 6));
    FieldSpec f = trial % 2 == 0 ? FieldSpec::Q() : FieldSpec::Fp(2);
    TorTable a = hochster_tor(K, f);
    TorTable b = hochster_tor_serial(K, f);
    CHECK(a.entries == b.entries);
  }
  TorTable a = hochster_tor(rp2_6(), FieldSpec::Fp(2));
  TorTable b = hochster_tor_serial(rp2_6(), FieldSpec::Fp(2));
  CHECK(a.entries == b.entries);
}
