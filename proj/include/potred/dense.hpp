#pragma once

#include <vector>

#include "potred/sparse.hpp"
#include "potred/vec.hpp"

namespace potred {

// Column-major dense m x m matrix.
struct DenseMatrix {
  int n = 0;
  std::vector<double> data;  // n*n, column-major

  explicit DenseMatrix(int n_) : n(n_), data(static_cast<std::size_t>(n_) * n_, 0.0) {}
  double& at(int i, int j) { return data[static_cast<std::size_t>(j) * n + i]; }
  double at(int i, int j) const { return data[static_cast<std::size_t>(j) * n + i]; }
};

// Forms A D^2 A^T explicitly. Intended for the exact-direction oracle only;
// throws if m exceeds `cap`.
DenseMatrix form_normal_matrix(const SparseMatrix& A, const Vector& d,
                               int cap = 500);

// Solves M x = rhs for symmetric positive definite M via Cholesky.
// Throws DomainError if M is not symmetric (to 1e-12 relative) or a
// nonpositive pivot occurs.
Vector dense_spd_solve(const DenseMatrix& M, const Vector& rhs);

}  // namespace potred
