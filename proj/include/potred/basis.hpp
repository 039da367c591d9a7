#pragma once

#include <vector>

#include "potred/sparse.hpp"
#include "potred/vec.hpp"

namespace potred {

// A choice of m columns of A forming a nonsingular basis matrix, with a
// dense LU factorization of that matrix.
class BasisFactorization {
 public:
  BasisFactorization(const SparseMatrix& A, std::vector<int> basic,
                     double pivot_tol);

  const std::vector<int>& basic() const { return basic_; }
  double pivot_tol() const { return pivot_tol_; }
  double min_pivot() const { return min_pivot_; }

  // Returns t_B = A_B^{-1} s. The full vector t (t_B on basic positions,
  // zero elsewhere) satisfies A t = s.
  Vector solve(const Vector& s) const;

 private:
  std::vector<int> basic_;
  double pivot_tol_;
  double min_pivot_;
  int m_;
  std::vector<double> lu_;        // column-major packed LU
  std::vector<int> row_perm_;
};

// Greedy maximum-weight basis: columns are processed in decreasing d_i and
// accepted while numerically independent of those already accepted.
BasisFactorization select_basis(const SparseMatrix& A, const Vector& d,
                                double pivot_tol = 1e-8);

}  // namespace potred
