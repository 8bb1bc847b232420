#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "lvl/field.hpp"

namespace lvl {

/* Sparse vector: (col, coeff) sorted by col, coeff != 0. */
using SparseVec = std::vector<std::pair<int, Scalar>>;

SparseVec sparse_from_dense(const FieldSpec& f, const std::vector<Scalar>& v);
std::vector<Scalar> dense_from_sparse(const FieldSpec& f, const SparseVec& v, int cols);

/* Incrementally maintained reduced row-echelon space.  The stored rows are the
   unique RREF of whatever was inserted, so downstream output is canonical
   independent of insertion order. */
class RowSpace {
 public:
  RowSpace(FieldSpec f, int cols, bool full_reduce = true);

  int cols() const { return cols_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const FieldSpec& field() const { return f_; }

  /* v reduced modulo the current span. */
  SparseVec residue(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return residue(v).empty(); }
  /* Insert v (reduced); returns true if the span grew. */
  bool insert(const SparseVec& v);

  /* Rows sorted by pivot column; pivots() gives their pivot columns. */
  const std::vector<SparseVec>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  bool is_pivot(int col) const;

 private:
  FieldSpec f_;
  int cols_;
  bool full_reduce_;
  std::vector<SparseVec> rows_;  /* sorted by pivot col, pivot coeff = 1 when full_reduce_ */
  std::vector<int> pivots_;
};

/* Sparse exact matrix over F_p or Q. */
class Mat {
 public:
  Mat(FieldSpec f, int rows, int cols);
  static Mat from_triplets(FieldSpec f, int rows, int cols,
                           const std::vector<std::tuple<int, int, Scalar>>& ts);

  int rows() const { return nrows_; }
  int cols() const { return ncols_; }
  const FieldSpec& field() const { return f_; }
  const std::vector<SparseVec>& row_data() const { return row_; }

  void add_to(int r, int c, const Scalar& v); /* accumulate during assembly */
  Scalar get(int r, int c) const;
  int nnz() const;

  int rank() const;
  /* Canonical right-kernel basis (one vector per RREF-free column, ascending). */
  std::vector<SparseVec> kernel_basis() const;
  /* One solution of A x = b with free variables set to 0, if consistent. */
  std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const;

  Mat transpose() const;
  std::vector<Scalar> apply(const std::vector<Scalar>& x) const;
  Mat mul(const Mat& rhs) const;

 private:
  FieldSpec f_;
  int nrows_, ncols_;
  std::vector<SparseVec> row_;

  RowSpace rref() const;
};

/* Packed GF(2) rank; used automatically by Mat::rank when p = 2. */
int rank_f2_packed(const std::vector<std::vector<uint64_t>>& rows, int cols);

}  // namespace lvl
