#pragma once

#include "potred/vec.hpp"

namespace potred {

// Tanabe-Todd-Ye potential (n+nu) ln(x^T z) - sum ln(x_i z_i) - n ln n.
struct PotentialValue {
  double phi = 0.0;
  double gap = 0.0;
  double barrier_sum = 0.0;
  double nu = 0.0;
};

PotentialValue potential(const Vector& x, const Vector& z, double nu);

// Quadratic upper bound phi(x+a dx, z+a dz) <= phi + g1 a + g2 a^2, valid
// while |a X^-1 dx|_inf <= tau and |a Z^-1 dz|_inf <= tau.
struct QuadraticBound {
  double g1 = 0.0;
  double g2 = 0.0;
  double tau = 0.0;
  double alpha = 0.0;
  bool valid = false;
};

QuadraticBound quadratic_coeffs(const Vector& x, const Vector& z,
                                const Vector& dx, const Vector& dz, double nu,
                                double tau, double alpha);

// Both sides of |W^-1 e - (n+nu)/(w^T w) w| >= sqrt(3)/(2 w_min); requires
// nu >= sqrt(n).
struct WboundResult {
  double lhs = 0.0;
  double rhs = 0.0;
};

WboundResult wbound_gap(const Vector& w, double nu);

}  // namespace potred
