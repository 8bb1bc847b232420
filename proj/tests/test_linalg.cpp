#include <doctest.h>

#include <random>

#include "lvl/linalg.hpp"

using namespace lvl;

namespace {

Mat make(FieldSpec f, int rows, int cols, const std::vector<std::vector<long long>>& a) {
  Mat m(f, rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (a[r][c] != 0) m.add_to(r, c, f.from_int(a[r][c]));
  return m;
}

Mat random_int_matrix(FieldSpec f, std::mt19937& rng, int rows, int cols, int lo, int hi,
                      double density) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Mat m(f, rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (coin(rng) < density) m.add_to(r, c, f.from_int(val(rng)));
  return m;
}

/* Independent rank oracle: fraction-free Bareiss elimination on integers.
   Also reports the pivot minors, so tests can tell when a mod-p reduction of
   the rank is guaranteed to agree. */
struct BareissResult {
  int rank;
  std::vector<mpz_class> pivots; /* nonzero leading minors d_1..d_r */
};

BareissResult bareiss_rank(std::vector<std::vector<mpz_class>> a) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  BareissResult res{0, {}};
  mpz_class prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) {
        mpz_class num = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_class q = num / prev; /* exact by Sylvester's identity */
        a[i][j] = q;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    res.pivots.push_back(prev);
    ++r;
  }
  res.rank = r;
  return res;
}

}  // namespace

TEST_CASE("field arithmetic basics") {
  FieldSpec f5 = FieldSpec::Fp(5);
  CHECK(f5.str(f5.from_int(-3)) == "2");
  CHECK(f5.eq(f5.mul(f5.from_int(3), f5.inv(f5.from_int(3))), f5.one()));
  CHECK(f5.eq(f5.from_string("1/2"), f5.from_int(3)));
  CHECK_THROWS_AS(FieldSpec::Fp(6), SchemaError);
  CHECK_THROWS_AS((void)f5.from_string("1/5"), SchemaError);

  FieldSpec q = FieldSpec::Q();
  CHECK(q.str(q.add(q.from_string("1/3"), q.from_string("1/6"))) == "1/2");
  CHECK(q.eq(q.inv(q.from_string("-2/7")), q.from_string("-7/2")));

  CHECK(FieldSpec::parse("fp:7") == FieldSpec::Fp(7));
  CHECK(FieldSpec::parse("q") == FieldSpec::Q());
  CHECK_THROWS_AS(FieldSpec::parse("f2"), SchemaError);
}

TEST_CASE("rank, kernel, solve on pinned examples") {
  for (FieldSpec f : {FieldSpec::Q(), FieldSpec::Fp(2), FieldSpec::Fp(5)}) {
    CAPTURE(f.name());
    /* 2x2 identity */
    Mat id = make(f, 2, 2, {{1, 0}, {0, 1}});
    CHECK(id.rank() == 2);
    CHECK(id.kernel_basis().empty());

    /* rank-1 outer product */
    Mat r1 = make(f, 3, 3, {{1, 2, 3}, {2, 4, 6}, {3, 6, 9}});
    CHECK(r1.rank() == (f.characteristic() == 2 ? 1 : 1));
    CHECK(r1.kernel_basis().size() == 2);

    /* solve consistent and inconsistent systems */
    Mat a = make(f, 2, 2, {{1, 1}, {0, 1}});
    auto x = a.solve({f.from_int(3), f.from_int(1)});
    REQUIRE(x.has_value());
    CHECK(f.eq((*x)[0], f.from_int(2)));
    CHECK(f.eq((*x)[1], f.from_int(1)));
    Mat b = make(f, 2, 1, {{1}, {1}});
    CHECK_FALSE(b.solve({f.from_int(1), f.from_int(0)}).has_value());
  }

  /* characteristic actually matters */
  Mat m2 = make(FieldSpec::Fp(2), 2, 2, {{1, 1}, {1, 1}});
  CHECK(m2.rank() == 1);
  Mat m3 = make(FieldSpec::Fp(3), 2, 2, {{1, 1}, {1, 1}});
  CHECK(m3.rank() == 1);
  Mat mq = make(FieldSpec::Q(), 2, 2, {{2, 1}, {1, 2}});
  CHECK(mq.rank() == 2);
  Mat m3b = make(FieldSpec::Fp(3), 2, 2, {{2, 1}, {1, 2}});
  CHECK(m3b.rank() == 1);
}

TEST_CASE("rank-nullity and kernel membership on random matrices") {
  std::mt19937 rng(20260816);
  for (FieldSpec f : {FieldSpec::Q(), FieldSpec::Fp(2), FieldSpec::Fp(3), FieldSpec::Fp(5)}) {
    for (int t = 0; t < 60; ++t) {
      int rows = 1 + static_cast<int>(rng() % 9);
      int cols = 1 + static_cast<int>(rng() % 9);
      Mat m = random_int_matrix(f, rng, rows, cols, -4, 4, 0.6);
      auto ker = m.kernel_basis();
      CHECK(m.rank() + static_cast<int>(ker.size()) == cols);
      for (auto& v : ker) {
        auto y = m.apply(dense_from_sparse(f, v, cols));
        for (auto& yi : y) CHECK(f.is_zero(yi));
      }
      /* kernel vectors are linearly independent */
      RowSpace rs(f, cols);
      for (auto& v : ker) CHECK(rs.insert(v));
    }
  }
}

TEST_CASE("solve re-multiplication check on random consistent systems") {
  std::mt19937 rng(99);
  for (FieldSpec f : {FieldSpec::Q(), FieldSpec::Fp(7)}) {
    for (int t = 0; t < 40; ++t) {
      int rows = 1 + static_cast<int>(rng() % 8);
      int cols = 1 + static_cast<int>(rng() % 8);
      Mat m = random_int_matrix(f, rng, rows, cols, -3, 3, 0.7);
      std::vector<Scalar> x0(cols);
      for (auto& v : x0) v = f.from_int(static_cast<int>(rng() % 7) - 3);
      auto b = m.apply(x0);
      auto x = m.solve(b);
      REQUIRE(x.has_value());
      auto b2 = m.apply(*x);
      for (int i = 0; i < rows; ++i) CHECK(f.eq(b[i], b2[i]));
    }
  }
}

TEST_CASE("F_p rank agrees with Q when no Bareiss pivot minor vanishes mod p") {
  std::mt19937 rng(4242);
  FieldSpec q = FieldSpec::Q();
  int compared = 0;
  for (int t = 0; t < 300; ++t) {
    int rows = 1 + static_cast<int>(rng() % 7);
    int cols = 1 + static_cast<int>(rng() % 7);
    std::vector<std::vector<long long>> a(rows, std::vector<long long>(cols, 0));
    for (auto& r : a)
      for (auto& v : r)
        if (rng() % 10 < 6) v = static_cast<long long>(rng() % 9) - 4;

    std::vector<std::vector<mpz_class>> az(rows, std::vector<mpz_class>(cols));
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) az[r][c] = static_cast<long>(a[r][c]);
    BareissResult oracle = bareiss_rank(az);

    Mat mq = make(q, rows, cols, a);
    CHECK(mq.rank() == oracle.rank); /* independent elimination strategies agree */

    for (uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
      FieldSpec fp = FieldSpec::Fp(p);
      Mat mp = make(fp, rows, cols, a);
      int rp = mp.rank();
      CHECK(rp <= oracle.rank); /* integer matrix: rank can only drop mod p */
      bool clean = true;
      for (auto& d : oracle.pivots)
        if (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p))) clean = false;
      if (clean) {
        CHECK(rp == oracle.rank);
        ++compared;
      }
    }
  }
  CHECK(compared > 200); /* the guard must not be vacuous */
}

TEST_CASE("RREF canonicality: insertion order does not change the stored rows") {
  FieldSpec f = FieldSpec::Q();
  std::vector<SparseVec> vs = {
      {{0, f.from_int(2)}, {2, f.from_int(4)}},
      {{1, f.from_int(1)}, {2, f.from_int(1)}},
      {{0, f.from_int(1)}, {1, f.from_int(1)}, {2, f.from_int(3)}},
  };
  RowSpace a(f, 3), b(f, 3);
  for (auto& v : vs) a.insert(v);
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) b.insert(*it);
  REQUIRE(a.rank() == b.rank());
  for (int k = 0; k < a.rank(); ++k) {
    REQUIRE(a.rows()[k].size() == b.rows()[k].size());
    for (size_t i = 0; i < a.rows()[k].size(); ++i) {
      CHECK(a.rows()[k][i].first == b.rows()[k][i].first);
      CHECK(f.eq(a.rows()[k][i].second, b.rows()[k][i].second));
    }
  }
}

TEST_CASE("packed GF(2) rank agrees with generic elimination") {
  std::mt19937 rng(7);
  FieldSpec f2 = FieldSpec::Fp(2);
  for (int t = 0; t < 100; ++t) {
    int rows = 1 + static_cast<int>(rng() % 20);
    int cols = 1 + static_cast<int>(rng() % 90);
    Mat m = random_int_matrix(f2, rng, rows, cols, 0, 1, 0.4);
    /* generic path */
    RowSpace rs(f2, cols, false);
    for (auto& r : m.row_data()) rs.insert(r);
    CHECK(m.rank() == rs.rank()); /* m.rank() dispatches to the packed kernel */
  }
}
