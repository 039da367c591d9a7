#include "potred/potential.hpp"

#include <cmath>

#include "potred/errors.hpp"

namespace potred {

PotentialValue potential(const Vector& x, const Vector& z, double nu) {
  if (x.size() != z.size()) throw DimensionError("potential: size mismatch");
  const int n = static_cast<int>(x.size());
  double gap = 0.0, barrier = 0.0;
  for (int i = 0; i < n; ++i) {
    if (x[i] <= 0.0 || z[i] <= 0.0)
      throw DomainError("potential: nonpositive component");
    double prod = x[i] * z[i];
    if (prod < 1e-300)
      throw DomainError("potential: component product underflow");
    gap += prod;
    barrier += std::log(prod);
  }
  PotentialValue out;
  out.gap = gap;
  out.barrier_sum = barrier;
  out.nu = nu;
  out.phi = (n + nu) * std::log(gap) - barrier - n * std::log(double(n));
  return out;
}

QuadraticBound quadratic_coeffs(const Vector& x, const Vector& z,
                                const Vector& dx, const Vector& dz, double nu,
                                double tau, double alpha) {
  const int n = static_cast<int>(x.size());
  if (!(tau > 0.0 && tau < 1.0)) throw ParamError("tau must be in (0,1)");
  double gap = 0.0;
  for (int i = 0; i < n; ++i) {
    if (x[i] <= 0.0 || z[i] <= 0.0)
      throw DomainError("quadratic_coeffs: nonpositive component");
    gap += x[i] * z[i];
  }

  QuadraticBound out;
  out.tau = tau;
  out.alpha = alpha;
  double dxdz = 0.0, sq_x = 0.0, sq_z = 0.0;
  double max_step_x = 0.0, max_step_z = 0.0;
  for (int i = 0; i < n; ++i) {
    double gi = (n + nu) / gap - 1.0 / (x[i] * z[i]);
    out.g1 += gi * (z[i] * dx[i] + x[i] * dz[i]);
    dxdz += dx[i] * dz[i];
    double rx = dx[i] / x[i], rz = dz[i] / z[i];
    sq_x += rx * rx;
    sq_z += rz * rz;
    max_step_x = std::max(max_step_x, std::fabs(alpha * rx));
    max_step_z = std::max(max_step_z, std::fabs(alpha * rz));
  }
  out.g2 = (n + nu) * dxdz / gap + (sq_x + sq_z) / (2.0 * (1.0 - tau));
  out.valid = max_step_x <= tau && max_step_z <= tau;
  return out;
}

WboundResult wbound_gap(const Vector& w, double nu) {
  const int n = static_cast<int>(w.size());
  if (nu < std::sqrt(double(n)))
    throw ParamError("wbound_gap: requires nu >= sqrt(n)");
  double wtw = 0.0, w_min = w.empty() ? 0.0 : w[0];
  for (double wi : w) {
    if (wi <= 0.0) throw DomainError("wbound_gap: nonpositive component");
    wtw += wi * wi;
    w_min = std::min(w_min, wi);
  }
  WboundResult out;
  double s = 0.0;
  for (double wi : w) {
    double t = 1.0 / wi - (n + nu) / wtw * wi;
    s += t * t;
  }
  out.lhs = std::sqrt(s);
  out.rhs = std::sqrt(3.0) / (2.0 * w_min);
  return out;
}

}  // namespace potred
