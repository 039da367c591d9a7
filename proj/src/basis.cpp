#include "potred/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "potred/errors.hpp"

namespace potred {

BasisFactorization::BasisFactorization(const SparseMatrix& A,
                                       std::vector<int> basic,
                                       double pivot_tol)
    : basic_(std::move(basic)), pivot_tol_(pivot_tol), m_(A.rows()) {
  if (static_cast<int>(basic_.size()) != m_)
    throw RankError("basis must contain exactly m columns");
  lu_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int j = 0; j < m_; ++j) {
    Vector col = A.dense_column(basic_[j]);
    std::copy(col.begin(), col.end(), lu_.begin() + static_cast<std::size_t>(j) * m_);
  }
  // dense LU with partial pivoting
  row_perm_.resize(m_);
  std::iota(row_perm_.begin(), row_perm_.end(), 0);
  auto at = [&](int i, int j) -> double& {
    return lu_[static_cast<std::size_t>(j) * m_ + i];
  };
  min_pivot_ = std::numeric_limits<double>::infinity();
  for (int k = 0; k < m_; ++k) {
    int piv = k;
    for (int i = k + 1; i < m_; ++i)
      if (std::fabs(at(i, k)) > std::fabs(at(piv, k))) piv = i;
    if (piv != k) {
      std::swap(row_perm_[k], row_perm_[piv]);
      for (int j = 0; j < m_; ++j) std::swap(at(k, j), at(piv, j));
    }
    double pivot = at(k, k);
    min_pivot_ = std::min(min_pivot_, std::fabs(pivot));
    if (std::fabs(pivot) < pivot_tol_)
      throw RankError("basis matrix numerically singular");
    for (int i = k + 1; i < m_; ++i) {
      double f = at(i, k) / pivot;
      at(i, k) = f;
      for (int j = k + 1; j < m_; ++j) at(i, j) -= f * at(k, j);
    }
  }
}

Vector BasisFactorization::solve(const Vector& s) const {
  if (static_cast<int>(s.size()) != m_)
    throw DimensionError("basis_solve: rhs size mismatch");
  auto at = [&](int i, int j) {
    return lu_[static_cast<std::size_t>(j) * m_ + i];
  };
  Vector t(m_);
  for (int i = 0; i < m_; ++i) t[i] = s[row_perm_[i]];
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < i; ++j) t[i] -= at(i, j) * t[j];
  for (int i = m_ - 1; i >= 0; --i) {
    for (int j = i + 1; j < m_; ++j) t[i] -= at(i, j) * t[j];
    t[i] /= at(i, i);
  }
  return t;
}

BasisFactorization select_basis(const SparseMatrix& A, const Vector& d,
                                double pivot_tol) {
  int m = A.rows(), n = A.cols();
  if (static_cast<int>(d.size()) != n)
    throw DimensionError("select_basis: weight length mismatch");
  for (double di : d)
    if (di <= 0.0) throw DomainError("select_basis: nonpositive weight");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return d[a] > d[b]; });

  std::vector<int> basic;
  std::vector<Vector> eliminated;   // partially eliminated accepted columns
  std::vector<int> pivot_rows;
  std::vector<char> row_used(m, 0);
  basic.reserve(m);

  for (int j : order) {
    if (static_cast<int>(basic.size()) == m) break;
    Vector v = A.dense_column(j);
    for (std::size_t k = 0; k < eliminated.size(); ++k) {
      double f = v[pivot_rows[k]] / eliminated[k][pivot_rows[k]];
      if (f != 0.0) axpy(-f, eliminated[k], v);
    }
    int piv = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i)
      if (!row_used[i] && std::fabs(v[i]) > best) {
        best = std::fabs(v[i]);
        piv = i;
      }
    if (piv < 0 || best < pivot_tol) continue;
    basic.push_back(j);
    eliminated.push_back(std::move(v));
    pivot_rows.push_back(piv);
    row_used[piv] = 1;
  }
  if (static_cast<int>(basic.size()) < m)
    throw RankError("select_basis: fewer than m independent columns");
  std::sort(basic.begin(), basic.end());
  return BasisFactorization(A, std::move(basic), pivot_tol);
}

}  // namespace potred
