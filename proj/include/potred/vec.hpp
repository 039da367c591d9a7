#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace potred {

using Vector = std::vector<double>;

inline double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vector& a) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::fabs(v));
  return s;
}

// a += alpha * b
inline void axpy(double alpha, const Vector& b, Vector& a) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += alpha * b[i];
}

inline Vector add(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vector sub(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector scaled(const Vector& a, double alpha) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = alpha * a[i];
  return r;
}

// componentwise product
inline Vector hadamard(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

inline double min_element(const Vector& a) {
  double m = a.empty() ? 0.0 : a[0];
  for (double v : a) m = std::min(m, v);
  return m;
}

}  // namespace potred
