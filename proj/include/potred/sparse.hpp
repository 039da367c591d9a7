#pragma once

#include <vector>

#include "potred/vec.hpp"

namespace potred {

struct Triplet {
  int row;
  int col;
  double value;
};

// Compressed-column sparse matrix with a compressed-row mirror for
// transpose products. Immutable after construction.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols, std::vector<int> col_ptr,
               std::vector<int> row_idx, std::vector<double> values);

  static SparseMatrix from_triplets(int rows, int cols,
                                    std::vector<Triplet> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nnz() const { return static_cast<int>(values_.size()); }

  const std::vector<int>& col_ptr() const { return col_ptr_; }
  const std::vector<int>& row_idx() const { return row_idx_; }
  const std::vector<double>& values() const { return values_; }

  Vector matvec(const Vector& v) const;
  Vector matvec_transpose(const Vector& v) const;

  // Densifies one column into a full length-rows vector.
  Vector dense_column(int j) const;

  std::vector<Triplet> to_triplets() const;

 private:
  void build_row_mirror();

  int rows_ = 0, cols_ = 0;
  std::vector<int> col_ptr_{0};
  std::vector<int> row_idx_;
  std::vector<double> values_;
  // row mirror
  std::vector<int> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> row_values_;
};

// Applies w -> A (d^2 o (A^T w)) without forming A D^2 A^T.
Vector normal_apply(const SparseMatrix& A, const Vector& d, const Vector& v);

// Diagonal of A D^2 A^T.
Vector normal_diagonal(const SparseMatrix& A, const Vector& d);

}  // namespace potred
