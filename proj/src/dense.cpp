#include "potred/dense.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>

#include "potred/errors.hpp"

namespace potred {

DenseMatrix form_normal_matrix(const SparseMatrix& A, const Vector& d,
                               int cap) {
  int m = A.rows();
  if (m > cap) throw DimensionError("dense oracle cap exceeded");
  DenseMatrix M(m);
  const auto& col_ptr = A.col_ptr();
  const auto& row_idx = A.row_idx();
  const auto& values = A.values();
  for (int j = 0; j < A.cols(); ++j) {
    double d2 = d[j] * d[j];
    for (int k = col_ptr[j]; k < col_ptr[j + 1]; ++k)
      for (int l = col_ptr[j]; l < col_ptr[j + 1]; ++l)
        M.at(row_idx[k], row_idx[l]) += d2 * values[k] * values[l];
  }
  return M;
}

Vector dense_spd_solve(const DenseMatrix& M, const Vector& rhs) {
  int n = M.n;
  if (static_cast<int>(rhs.size()) != n)
    throw DimensionError("dense_spd_solve: rhs size mismatch");
  Eigen::Map<const Eigen::MatrixXd> Me(M.data.data(), n, n);
  double scale = Me.cwiseAbs().maxCoeff();
  if ((Me - Me.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + scale))
    throw DomainError("dense_spd_solve: matrix not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(Me);
  if (llt.info() != Eigen::Success)
    throw DomainError("dense_spd_solve: matrix not positive definite");
  Eigen::Map<const Eigen::VectorXd> be(rhs.data(), n);
  Eigen::VectorXd x = llt.solve(be);
  return Vector(x.data(), x.data() + n);
}

}  // namespace potred
