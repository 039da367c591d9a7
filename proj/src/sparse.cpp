#include "potred/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "potred/errors.hpp"

namespace potred {

SparseMatrix::SparseMatrix(int rows, int cols, std::vector<int> col_ptr,
                           std::vector<int> row_idx,
                           std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      col_ptr_(std::move(col_ptr)),
      row_idx_(std::move(row_idx)),
      values_(std::move(values)) {
  if (static_cast<int>(col_ptr_.size()) != cols_ + 1)
    throw DimensionError("col_ptr size mismatch");
  if (row_idx_.size() != values_.size())
    throw DimensionError("row_idx/values size mismatch");
  for (int j = 0; j < cols_; ++j) {
    if (col_ptr_[j + 1] < col_ptr_[j])
      throw DimensionError("column offsets must be nondecreasing");
    for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
      if (row_idx_[k] < 0 || row_idx_[k] >= rows_)
        throw DimensionError("row index out of range");
      if (k > col_ptr_[j] && row_idx_[k] <= row_idx_[k - 1])
        throw DimensionError("row indices must be strictly increasing");
      if (values_[k] == 0.0)
        throw DimensionError("explicitly stored zero value");
      if (!std::isfinite(values_[k]))
        throw DimensionError("nonfinite value");
    }
  }
  build_row_mirror();
}

SparseMatrix SparseMatrix::from_triplets(int rows, int cols,
                                         std::vector<Triplet> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.col != b.col ? a.col < b.col : a.row < b.row;
            });
  std::vector<int> col_ptr(cols + 1, 0);
  std::vector<int> row_idx;
  std::vector<double> values;
  row_idx.reserve(entries.size());
  values.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Triplet& t = entries[i];
    if (t.col < 0 || t.col >= cols || t.row < 0 || t.row >= rows)
      throw DimensionError("triplet index out of range");
    if (i > 0 && entries[i - 1].col == t.col && entries[i - 1].row == t.row)
      throw DimensionError("duplicate triplet entry");
    if (t.value == 0.0) continue;
    col_ptr[t.col + 1]++;
    row_idx.push_back(t.row);
    values.push_back(t.value);
  }
  for (int j = 0; j < cols; ++j) col_ptr[j + 1] += col_ptr[j];
  return SparseMatrix(rows, cols, std::move(col_ptr), std::move(row_idx),
                      std::move(values));
}

void SparseMatrix::build_row_mirror() {
  row_ptr_.assign(rows_ + 1, 0);
  col_idx_.resize(values_.size());
  row_values_.resize(values_.size());
  for (int r : row_idx_) row_ptr_[r + 1]++;
  for (int i = 0; i < rows_; ++i) row_ptr_[i + 1] += row_ptr_[i];
  std::vector<int> next(row_ptr_.begin(), row_ptr_.end() - 1);
  for (int j = 0; j < cols_; ++j) {
    for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
      int pos = next[row_idx_[k]]++;
      col_idx_[pos] = j;
      row_values_[pos] = values_[k];
    }
  }
}

Vector SparseMatrix::matvec(const Vector& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw DimensionError("matvec dimension mismatch");
  Vector out(rows_, 0.0);
  for (int j = 0; j < cols_; ++j) {
    double vj = v[j];
    if (vj == 0.0) continue;
    for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k)
      out[row_idx_[k]] += values_[k] * vj;
  }
  return out;
}

Vector SparseMatrix::matvec_transpose(const Vector& v) const {
  if (static_cast<int>(v.size()) != rows_)
    throw DimensionError("matvec_transpose dimension mismatch");
  Vector out(cols_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    double vi = v[i];
    if (vi == 0.0) continue;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      out[col_idx_[k]] += row_values_[k] * vi;
  }
  return out;
}

Vector SparseMatrix::dense_column(int j) const {
  Vector out(rows_, 0.0);
  for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k)
    out[row_idx_[k]] = values_[k];
  return out;
}

std::vector<Triplet> SparseMatrix::to_triplets() const {
  std::vector<Triplet> out;
  out.reserve(values_.size());
  for (int j = 0; j < cols_; ++j)
    for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k)
      out.push_back({row_idx_[k], j, values_[k]});
  return out;
}

Vector normal_apply(const SparseMatrix& A, const Vector& d, const Vector& v) {
  if (static_cast<int>(d.size()) != A.cols())
    throw DimensionError("normal_apply: d length mismatch");
  for (double di : d)
    if (di <= 0.0) throw DomainError("normal_apply: nonpositive scaling entry");
  Vector t = A.matvec_transpose(v);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] *= d[i] * d[i];
  return A.matvec(t);
}

Vector normal_diagonal(const SparseMatrix& A, const Vector& d) {
  Vector diag(A.rows(), 0.0);
  const auto& col_ptr = A.col_ptr();
  const auto& row_idx = A.row_idx();
  const auto& values = A.values();
  for (int j = 0; j < A.cols(); ++j)
    for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k) {
      double s = values[k] * d[j];
      diag[row_idx[k]] += s * s;
    }
  return diag;
}

}  // namespace potred
