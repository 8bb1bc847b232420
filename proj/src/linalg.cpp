#include "lvl/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace lvl {

SparseVec sparse_from_dense(const FieldSpec& f, const std::vector<Scalar>& v) {
  SparseVec out;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (!f.is_zero(v[i])) out.emplace_back(i, v[i]);
  return out;
}

std::vector<Scalar> dense_from_sparse(const FieldSpec& f, const SparseVec& v, int cols) {
  std::vector<Scalar> out(cols, f.zero());
  for (auto& [c, x] : v) out[c] = x;
  return out;
}

/* ---- RowSpace ---- */

RowSpace::RowSpace(FieldSpec f, int cols, bool full_reduce)
    : f_(f), cols_(cols), full_reduce_(full_reduce) {}

bool RowSpace::is_pivot(int col) const {
  return std::binary_search(pivots_.begin(), pivots_.end(), col);
}

/* a += c * b, both sorted sparse */
static SparseVec axpy(const FieldSpec& f, const SparseVec& a, const Scalar& c, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      Scalar v = f.mul(c, b[j].second);
      if (!f.is_zero(v)) out.emplace_back(b[j].first, std::move(v));
      ++j;
    } else {
      Scalar v = f.add(a[i].second, f.mul(c, b[j].second));
      if (!f.is_zero(v)) out.emplace_back(a[i].first, std::move(v));
      ++i, ++j;
    }
  }
  return out;
}

SparseVec RowSpace::residue(const SparseVec& v) const {
  SparseVec r = v;
  if (!full_reduce_) {
    /* forward echelon: chase the leading column only */
    while (!r.empty()) {
      auto it = std::lower_bound(pivots_.begin(), pivots_.end(), r.front().first);
      if (it == pivots_.end() || *it != r.front().first) break;
      size_t k = static_cast<size_t>(it - pivots_.begin());
      Scalar c = f_.neg(f_.div(r.front().second, rows_[k][0].second));
      r = axpy(f_, r, c, rows_[k]);
    }
    return r;
  }
  /* RREF rows vanish at each other's pivot columns, so the coefficient of v at
     each pivot column is final; one subtraction per hit suffices. */
  std::vector<std::pair<size_t, Scalar>> hits;
  for (auto& [c, x] : r) {
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), c);
    if (it != pivots_.end() && *it == c)
      hits.emplace_back(static_cast<size_t>(it - pivots_.begin()), x);
  }
  for (auto& [k, x] : hits) r = axpy(f_, r, f_.neg(x), rows_[k]);
  return r;
}

bool RowSpace::insert(const SparseVec& v) {
  SparseVec r = residue(v);
  if (r.empty()) return false;
  if (full_reduce_) {
    /* normalize pivot to 1, then eliminate its column from existing rows */
    Scalar cinv = f_.inv(r.front().second);
    if (!f_.is_one(r.front().second)) {
      for (auto& [c, x] : r) x = f_.mul(x, cinv);
    }
    int pc = r.front().first;
    for (size_t k = 0; k < rows_.size(); ++k) {
      auto it = std::lower_bound(rows_[k].begin(), rows_[k].end(), pc,
                                 [](const auto& e, int c) { return e.first < c; });
      if (it != rows_[k].end() && it->first == pc) {
        Scalar c = f_.neg(it->second);
        rows_[k] = axpy(f_, rows_[k], c, r);
      }
    }
  }
  int pc = r.front().first;
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pc);
  size_t at = static_cast<size_t>(pos - pivots_.begin());
  pivots_.insert(pos, pc);
  rows_.insert(rows_.begin() + at, std::move(r));
  return true;
}

/* ---- Mat ---- */

Mat::Mat(FieldSpec f, int rows, int cols) : f_(f), nrows_(rows), ncols_(cols), row_(rows) {}

Mat Mat::from_triplets(FieldSpec f, int rows, int cols,
                       const std::vector<std::tuple<int, int, Scalar>>& ts) {
  Mat m(f, rows, cols);
  for (auto& [r, c, v] : ts) m.add_to(r, c, v);
  return m;
}

void Mat::add_to(int r, int c, const Scalar& v) {
  assert(r >= 0 && r < nrows_ && c >= 0 && c < ncols_);
  if (f_.is_zero(v)) return;
  auto& row = row_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, int cc) { return e.first < cc; });
  if (it != row.end() && it->first == c) {
    it->second = f_.add(it->second, v);
    if (f_.is_zero(it->second)) row.erase(it);
  } else {
    row.insert(it, {c, v});
  }
}

Scalar Mat::get(int r, int c) const {
  auto& row = row_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, int cc) { return e.first < cc; });
  if (it != row.end() && it->first == c) return it->second;
  return f_.zero();
}

int Mat::nnz() const {
  int n = 0;
  for (auto& r : row_) n += static_cast<int>(r.size());
  return n;
}

int rank_f2_packed(const std::vector<std::vector<uint64_t>>& rows_in, int cols) {
  std::vector<std::vector<uint64_t>> basis; /* rows with distinct leading bits */
  std::vector<int> lead;
  int rank = 0;
  int words = (cols + 63) / 64;
  for (auto r : rows_in) {
    r.resize(words);
    for (;;) {
      int lb = -1;
      for (int w = 0; w < words; ++w)
        if (r[w]) {
          lb = w * 64 + __builtin_ctzll(r[w]);
          break;
        }
      if (lb < 0) break;
      bool reduced = false;
      for (size_t k = 0; k < basis.size(); ++k)
        if (lead[k] == lb) {
          for (int w = 0; w < words; ++w) r[w] ^= basis[k][w];
          reduced = true;
          break;
        }
      if (!reduced) {
        basis.push_back(std::move(r));
        lead.push_back(lb);
        ++rank;
        break;
      }
    }
  }
  return rank;
}

RowSpace Mat::rref() const {
  RowSpace rs(f_, ncols_);
  for (auto& r : row_) rs.insert(r);
  return rs;
}

int Mat::rank() const {
  if (f_.kind() == FieldSpec::Kind::fp && f_.p() == 2) {
    int words = (ncols_ + 63) / 64;
    std::vector<std::vector<uint64_t>> rows(nrows_, std::vector<uint64_t>(words, 0));
    for (int r = 0; r < nrows_; ++r)
      for (auto& [c, v] : row_[r])
        if (std::get<uint64_t>(v) & 1) rows[r][c / 64] ^= 1ull << (c % 64);
    return rank_f2_packed(rows, ncols_);
  }
  RowSpace rs(f_, ncols_, /*full_reduce=*/false);
  for (auto& r : row_) rs.insert(r);
  return rs.rank();
}

std::vector<SparseVec> Mat::kernel_basis() const {
  RowSpace rs = rref();
  std::vector<SparseVec> out;
  for (int c = 0; c < ncols_; ++c) {
    if (rs.is_pivot(c)) continue;
    SparseVec v;
    /* x_c = 1; x_{pivot of row k} = -row_k[c] */
    for (size_t k = 0; k < rs.rows().size(); ++k) {
      const auto& row = rs.rows()[k];
      auto it = std::lower_bound(row.begin(), row.end(), c,
                                 [](const auto& e, int cc) { return e.first < cc; });
      if (it != row.end() && it->first == c)
        v.emplace_back(rs.pivots()[k], f_.neg(it->second));
    }
    v.emplace_back(c, f_.one());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<Scalar>> Mat::solve(const std::vector<Scalar>& b) const {
  assert(static_cast<int>(b.size()) == nrows_);
  RowSpace rs(f_, ncols_ + 1);
  for (int r = 0; r < nrows_; ++r) {
    SparseVec v = row_[r];
    if (!f_.is_zero(b[r])) v.emplace_back(ncols_, b[r]);
    rs.insert(v);
  }
  std::vector<Scalar> x(ncols_, f_.zero());
  for (size_t k = 0; k < rs.rows().size(); ++k) {
    int pc = rs.pivots()[k];
    if (pc == ncols_) return std::nullopt; /* row (0 ... 0 | 1): inconsistent */
    const auto& row = rs.rows()[k];
    if (!row.empty() && row.back().first == ncols_) x[pc] = row.back().second;
  }
  return x;
}

Mat Mat::transpose() const {
  Mat t(f_, ncols_, nrows_);
  for (int r = 0; r < nrows_; ++r)
    for (auto& [c, v] : row_[r]) t.row_[c].emplace_back(r, v);
  return t;
}

std::vector<Scalar> Mat::apply(const std::vector<Scalar>& x) const {
  assert(static_cast<int>(x.size()) == ncols_);
  std::vector<Scalar> y(nrows_, f_.zero());
  for (int r = 0; r < nrows_; ++r)
    for (auto& [c, v] : row_[r]) y[r] = f_.add(y[r], f_.mul(v, x[c]));
  return y;
}

Mat Mat::mul(const Mat& rhs) const {
  assert(ncols_ == rhs.nrows_);
  Mat out(f_, nrows_, rhs.ncols_);
  for (int r = 0; r < nrows_; ++r)
    for (auto& [k, v] : row_[r])
      for (auto& [c, w] : rhs.row_[k]) out.add_to(r, c, f_.mul(v, w));
  return out;
}

}  // namespace lvl
