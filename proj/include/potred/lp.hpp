#pragma once

#include <string>

#include "potred/sparse.hpp"
#include "potred/vec.hpp"

namespace potred {

// Standard-form linear program: minimize c^T x s.t. A x = b, x >= 0.
struct LinearProgram {
  SparseMatrix A;  // m x n
  Vector b;        // length m
  Vector c;        // length n
  std::string name;

  int num_rows() const { return A.rows(); }
  int num_cols() const { return A.cols(); }
};

struct RankReport {
  bool full_rank = false;
  int rank = 0;
  double pivot_ratio = 0.0;  // |smallest accepted pivot| / |largest pivot|
};

// Numerical row-rank check via column-pivoted LU of A. Pivots below
// 1e-10 times the largest pivot are treated as zero.
RankReport validate_rank(const LinearProgram& lp);
RankReport validate_rank(const SparseMatrix& A);

}  // namespace potred
