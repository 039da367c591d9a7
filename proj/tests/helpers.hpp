#pragma once

// Shared fixtures and independent oracles for the test suites. The dense
// solvers here are deliberately separate from the library implementation.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "potred/lp.hpp"
#include "potred/scaled_newton.hpp"
#include "potred/vec.hpp"

namespace testutil {

using potred::LinearProgram;
using potred::ScaledSystem;
using potred::SparseMatrix;
using potred::Triplet;
using potred::Vector;

// minimize x1 + x2 s.t. x1 + x2 = 2; reference point x = z = (1,1), y = 0
inline LinearProgram make_e1_lp() {
  LinearProgram lp;
  lp.A = SparseMatrix::from_triplets(1, 2, {{0, 0, 1.0}, {0, 1, 1.0}});
  lp.b = {2.0};
  lp.c = {1.0, 1.0};
  lp.name = "e1";
  return lp;
}

// same constraint, c = (1,2); reference point x = (1,1), y = 0, z = (1,2)
inline LinearProgram make_e2_lp() {
  LinearProgram lp = make_e1_lp();
  lp.c = {1.0, 2.0};
  lp.name = "e2";
  return lp;
}

inline ScaledSystem make_e1_system(const LinearProgram& lp) {
  return potred::build_scaled_system(lp, {1.0, 1.0}, {0.0}, {1.0, 1.0},
                                     std::sqrt(2.0));
}

inline ScaledSystem make_e2_system(const LinearProgram& lp) {
  return potred::build_scaled_system(lp, {1.0, 1.0}, {0.0}, {1.0, 2.0},
                                     std::sqrt(2.0));
}

// Gaussian elimination with partial pivoting on a dense column-major
// matrix; test-side oracle, independent of the library solvers.
inline Vector gauss_solve(std::vector<double> a, int n, Vector rhs) {
  auto at = [&](int i, int j) -> double& { return a[j * n + i]; };
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(at(i, k)) > std::fabs(at(piv, k))) piv = i;
    if (at(piv, k) == 0.0) throw std::runtime_error("singular");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
      std::swap(rhs[k], rhs[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      double f = at(i, k) / at(k, k);
      for (int j = k; j < n; ++j) at(i, j) -= f * at(k, j);
      rhs[i] -= f * rhs[k];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) rhs[i] -= at(i, j) * rhs[j];
    rhs[i] /= at(i, i);
  }
  return rhs;
}

// Cyclic Jacobi eigenvalue iteration for a symmetric dense matrix;
// independent oracle for numerical-rank checks.
inline Vector jacobi_eigenvalues(std::vector<double> a, int n) {
  auto at = [&](int i, int j) -> double& { return a[j * n + i]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    if (off < 1e-24) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (at(p, q) == 0.0) continue;
        double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  Vector eig(n);
  for (int i = 0; i < n; ++i) eig[i] = at(i, i);
  return eig;
}

inline std::vector<double> to_dense(const SparseMatrix& A) {
  std::vector<double> d(static_cast<std::size_t>(A.rows()) * A.cols(), 0.0);
  for (const Triplet& t : A.to_triplets())
    d[static_cast<std::size_t>(t.col) * A.rows() + t.row] = t.value;
  return d;
}

// Structural contract of a direction: primal and dual rows exact, third
// row identity, scaled/unscaled consistency, residual on basic support.
inline bool direction_well_formed(const ScaledSystem& sys,
                                  const potred::Direction& dir) {
  const int n = sys.num_cols();
  Vector ad_du = sys.lp->A.matvec(potred::hadamard(sys.d, dir.du));
  if (potred::norm2(potred::sub(ad_du, sys.p)) >
      1e-10 * (1.0 + potred::norm2(sys.p)))
    return false;
  Vector aty = sys.lp->A.matvec_transpose(dir.dy);
  Vector dual_row(n);
  for (int j = 0; j < n; ++j) dual_row[j] = sys.d[j] * aty[j] + dir.dv[j];
  if (potred::norm2(potred::sub(dual_row, sys.q)) >
      1e-10 * (1.0 + potred::norm2(sys.q)))
    return false;
  for (int j = 0; j < n; ++j) {
    double third = dir.du[j] + dir.dv[j] - sys.r[j] - dir.xi[j];
    if (std::fabs(third) > 1e-12 * (1.0 + std::fabs(sys.r[j]))) return false;
    if (std::fabs(dir.dx[j] - sys.d[j] * dir.du[j]) >
        1e-14 * (1.0 + std::fabs(dir.dx[j])))
      return false;
    if (std::fabs(dir.dz[j] - dir.dv[j] / sys.d[j]) >
        1e-14 * (1.0 + std::fabs(dir.dz[j])))
      return false;
  }
  std::vector<char> in_basis(n, 0);
  for (int j : dir.basic_support) in_basis[j] = 1;
  for (int j = 0; j < n; ++j)
    if (!in_basis[j] && dir.xi[j] != 0.0) return false;
  return true;
}

}  // namespace testutil
