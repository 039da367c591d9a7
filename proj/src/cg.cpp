#include "potred/cg.hpp"

#include <cmath>

namespace potred {

CgOutcome conjugate_gradients(const LinearOp& apply, const Vector& rhs,
                              const LinearOp& precond, const CgAccept& accept,
                              int max_iters) {
  const std::size_t n = rhs.size();
  CgOutcome out;
  out.solution.assign(n, 0.0);
  out.residual = rhs;
  out.iterations = 0;

  if (accept(out)) {
    out.stop = CgOutcome::Stop::accepted;
    return out;
  }

  Vector r = rhs;  // residual for x = 0
  Vector z = precond(r);
  Vector p = z;
  double rz = dot(r, z);

  for (int it = 1; it <= max_iters; ++it) {
    Vector Ap = apply(p);
    double pAp = dot(p, Ap);
    if (!(pAp > 0.0) || !std::isfinite(pAp)) {
      out.stop = CgOutcome::Stop::breakdown;
      out.residual = sub(rhs, apply(out.solution));
      return out;
    }
    double alpha = rz / pAp;
    axpy(alpha, p, out.solution);
    axpy(-alpha, Ap, r);
    if (it % 50 == 0) r = sub(rhs, apply(out.solution));

    out.iterations = it;
    out.residual = r;
    if (accept(out)) {
      out.stop = CgOutcome::Stop::accepted;
      out.residual = sub(rhs, apply(out.solution));
      return out;
    }

    z = precond(r);
    double rz_next = dot(r, z);
    double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }

  out.stop = CgOutcome::Stop::max_iterations;
  out.residual = sub(rhs, apply(out.solution));
  return out;
}

}  // namespace potred
