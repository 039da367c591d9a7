#include "potred/lp.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace potred {

RankReport validate_rank(const SparseMatrix& A) {
  int m = A.rows(), n = A.cols();
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(m, n);
  for (const Triplet& t : A.to_triplets()) dense(t.row, t.col) = t.value;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(dense);
  Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  int k = std::min(m, n);
  double largest = k > 0 ? pivots[0] : 0.0;

  RankReport report;
  if (largest == 0.0) return report;
  const double threshold = 1e-10;
  double smallest_accepted = largest;
  for (int i = 0; i < k; ++i) {
    if (pivots[i] >= threshold * largest) {
      report.rank = i + 1;
      smallest_accepted = pivots[i];
    } else {
      break;
    }
  }
  report.pivot_ratio = smallest_accepted / largest;
  report.full_rank = (report.rank == m);
  return report;
}

RankReport validate_rank(const LinearProgram& lp) { return validate_rank(lp.A); }

}  // namespace potred
