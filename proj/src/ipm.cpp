#include "potred/ipm.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "potred/dense.hpp"
#include "potred/errors.hpp"
#include "potred/potential.hpp"

namespace potred {

namespace {

constexpr double kDecreaseSlack = 1e-10;

double phi_of(const Vector& x, const Vector& z, double nu) {
  return potential(x, z, nu).phi;
}

long long iteration_bound(double phi0, double nu, double epsilon,
                          double delta) {
  double span = phi0 - nu * std::log(epsilon);
  if (span <= 0.0) return 1;
  return static_cast<long long>(std::ceil(span / delta));
}

// Potential at the stepped point, or +inf when the step leaves the
// positive orthant.
double phi_at_step(const ScaledSystem& sys, const Direction& dir, double alpha,
                   double nu) {
  Vector x = sys.x, z = sys.z;
  axpy(alpha, dir.dx, x);
  axpy(alpha, dir.dz, z);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] <= 0.0 || z[i] <= 0.0)
      return std::numeric_limits<double>::infinity();
  return phi_of(x, z, nu);
}

double stepped_gap(const ScaledSystem& sys, const Direction& dir,
                   double alpha) {
  double gap = 0.0;
  for (std::size_t i = 0; i < sys.x.size(); ++i)
    gap += (sys.x[i] + alpha * dir.dx[i]) * (sys.z[i] + alpha * dir.dz[i]);
  return gap;
}

IterationRecord make_record(int k, const ScaledSystem& sys, double phi_val,
                            double theta, const InexactResult& inexact,
                            double alpha, double phi_next) {
  IterationRecord rec;
  rec.k = k;
  rec.gap = sys.gap;
  rec.phi = phi_val;
  rec.delta_achieved = phi_val - phi_next;
  rec.alpha = alpha;
  rec.theta = theta;
  rec.norm_xi = norm2(inexact.dir.xi);
  rec.cond6a_lhs = inexact.report.lhs_6a;
  rec.cond6a_rhs = inexact.report.rhs_6a;
  rec.cond6b_lhs = inexact.report.lhs_6b;
  rec.cond6b_rhs = inexact.report.rhs_6b;
  rec.cond6c_lhs = inexact.report.lhs_6c;
  rec.cond6c_rhs = inexact.report.rhs_6c;
  rec.cg_iters = inexact.stats.cg_iters;
  rec.wmin = sys.w_min;
  rec.norm_r = norm2(sys.r);
  return rec;
}

}  // namespace

double SolveParams::effective_nu(int n) const {
  return nu > 0.0 ? nu : std::sqrt(double(n));
}

double SolveParams::delta(int n) const {
  double k4 = std::pow(1.0 - kappa, 4);
  if (mode == Mode::feasible) return 0.15 * k4;
  double nnu = n + effective_nu(n);
  return k4 / (1600.0 * nnu * nnu);
}

void SolveParams::validate(int n) const {
  if (!(kappa >= 0.0 && kappa < 1.0))
    throw ParamError("kappa must be in [0, 1)");
  if (!(epsilon > 0.0)) throw ParamError("epsilon must be > 0");
  double v = effective_nu(n);
  if (v < std::sqrt(double(n)) - 1e-12)
    throw ParamError("nu must be >= sqrt(n)");
  if (mode == Mode::infeasible) {
    if (v > 2.0 * n) throw ParamError("nu must be <= 2n in infeasible mode");
    if (!(rho > 0.0)) throw ParamError("rho must be > 0");
  }
}

std::string to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasibility_certificate: return "infeasibility-certificate";
    case Status::iteration_limit: return "iteration-limit";
    case Status::numerical_failure: return "numerical-failure";
  }
  return "unknown";
}

Residuals nonlinear_residual(const LinearProgram& lp, const Iterate& it,
                             double mu) {
  Residuals res;
  res.primal = sub(lp.A.matvec(it.x), lp.b);
  res.dual = sub(add(lp.A.matvec_transpose(it.y), it.z), lp.c);
  res.complementarity.resize(it.x.size());
  for (std::size_t i = 0; i < it.x.size(); ++i)
    res.complementarity[i] = it.x[i] * it.z[i] - mu;
  return res;
}

double max_interior_step(const Vector& x, const Vector& z, const Vector& dx,
                         const Vector& dz) {
  double a = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (dx[i] < 0.0) a = std::min(a, -x[i] / dx[i]);
    if (dz[i] < 0.0) a = std::min(a, -z[i] / dz[i]);
  }
  if (!std::isfinite(a)) a = 1.0 / 0.99;
  return 0.99 * a;
}

double guaranteed_alpha_feasible(const ScaledSystem& sys, double kappa) {
  double r_norm = norm2(sys.r);
  if (r_norm == 0.0) throw DomainError("guaranteed step undefined for r = 0");
  return sys.w_min * std::pow(1.0 - kappa, 3) / (2.0 * r_norm);
}

double guaranteed_alpha_infeasible(const ScaledSystem& sys, double kappa) {
  int n = sys.num_cols();
  return std::pow(1.0 - kappa, 3) * sys.w_min * sys.w_min /
         (200.0 * (n + sys.nu) * sys.gap);
}

std::optional<double> step_search_feasible(const ScaledSystem& sys,
                                           const Direction& dir,
                                           const SolveParams& params) {
  if (norm2(dir.dx) == 0.0 && norm2(dir.dz) == 0.0)
    throw DomainError("step search: zero direction");
  double nu = sys.nu;
  double delta = params.delta(sys.num_cols());
  double phi_cur = phi_of(sys.x, sys.z, nu);

  double alpha = max_interior_step(sys.x, sys.z, dir.dx, dir.dz);
  for (int t = 0; t < params.max_backtracks; ++t) {
    if (phi_at_step(sys, dir, alpha, nu) <= phi_cur - delta) return alpha;
    alpha *= params.backtrack_factor;
  }
  double alpha_l4 = guaranteed_alpha_feasible(sys, params.kappa);
  if (phi_at_step(sys, dir, alpha_l4, nu) <= phi_cur - delta) return alpha_l4;
  return std::nullopt;
}

std::optional<double> step_search_infeasible(const ScaledSystem& sys,
                                             const Direction& dir,
                                             const SolveParams& params) {
  if (norm2(dir.dx) == 0.0 && norm2(dir.dz) == 0.0)
    throw DomainError("step search: zero direction");
  double nu = sys.nu;
  double delta = params.delta(sys.num_cols());
  double phi_cur = phi_of(sys.x, sys.z, nu);

  auto admissible = [&](double alpha) {
    if (phi_at_step(sys, dir, alpha, nu) > phi_cur - delta) return false;
    return stepped_gap(sys, dir, alpha) >=
           (1.0 - alpha) * sys.gap * (1.0 - 1e-12);
  };

  // steps beyond 1 would overshoot feasibility and drive theta negative
  double alpha =
      std::min(max_interior_step(sys.x, sys.z, dir.dx, dir.dz), 1.0);
  for (int t = 0; t < params.max_backtracks; ++t) {
    if (admissible(alpha)) return alpha;
    alpha *= params.backtrack_factor;
  }
  double alpha_l6 = guaranteed_alpha_infeasible(sys, params.kappa);
  if (admissible(alpha_l6)) return alpha_l6;
  return std::nullopt;
}

SolveResult run_feasible(const LinearProgram& lp, const Iterate& start,
                         const SolveParams& params,
                         const IterationObserver& observer) {
  const int n = lp.num_cols();
  SolveParams p = params;
  p.mode = Mode::feasible;
  p.validate(n);
  const double nu = p.effective_nu(n);
  const double delta = p.delta(n);

  for (int j = 0; j < n; ++j)
    if (start.x[j] <= 0.0 || start.z[j] <= 0.0)
      throw ParamError("start point not strictly positive");
  {
    Residuals res = nonlinear_residual(lp, start, 0.0);
    if (norm_inf(res.primal) > 1e-9 * (1.0 + norm_inf(lp.b)) ||
        norm_inf(res.dual) > 1e-9 * (1.0 + norm_inf(lp.c)))
      throw ParamError("start point not feasible");
  }

  auto t0 = std::chrono::steady_clock::now();
  SolveResult result;
  result.final = start;
  Iterate& it = result.final;
  it.k = 0;

  result.phi_start = phi_of(it.x, it.z, nu);
  result.initial_gap = dot(it.x, it.z);
  long long bound = iteration_bound(result.phi_start, nu, p.epsilon, delta);
  long long max_outer = p.max_outer > 0 ? p.max_outer : 10 * bound;

  while (true) {
    double gap = dot(it.x, it.z);
    if (gap <= p.epsilon) {
      result.status = Status::optimal;
      break;
    }
    if (it.k >= max_outer) {
      result.status = Status::iteration_limit;
      break;
    }

    ScaledSystem sys = build_scaled_system(lp, it.x, it.y, it.z, nu);
    InexactResult inexact =
        inexact_directions(sys, p.kappa, Mode::feasible, p.inner);

    std::optional<double> alpha;
    try {
      alpha = step_search_feasible(sys, inexact.dir, p);
    } catch (const DomainError& e) {
      result.status = Status::numerical_failure;
      result.message = e.what();
      break;
    }
    if (!alpha) {
      result.status = Status::numerical_failure;
      result.message = "guaranteed step failed the decrease test";
      break;
    }

    double phi_cur = phi_of(it.x, it.z, nu);
    axpy(*alpha, inexact.dir.dx, it.x);
    axpy(*alpha, inexact.dir.dy, it.y);
    axpy(*alpha, inexact.dir.dz, it.z);
    double phi_next = phi_of(it.x, it.z, nu);

    result.log.push_back(
        make_record(it.k, sys, phi_cur, it.theta, inexact, *alpha, phi_next));
    if (observer)
      observer(IterationView{sys, inexact.dir, inexact.report, *alpha});
    ++it.k;
  }

  result.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return result;
}

SolveResult run_infeasible(const LinearProgram& lp, const SolveParams& params,
                           const IterationObserver& observer) {
  const int n = lp.num_cols();
  SolveParams p = params;
  p.mode = Mode::infeasible;
  p.validate(n);
  const double nu = p.effective_nu(n);
  const double delta = p.delta(n);

  auto t0 = std::chrono::steady_clock::now();
  SolveResult result;
  Iterate& it = result.final;
  it.x.assign(n, p.rho);
  it.y.assign(lp.num_rows(), 0.0);
  it.z.assign(n, p.rho);
  it.k = 0;
  it.theta = 1.0;

  {
    Residuals res = nonlinear_residual(lp, it, 0.0);
    result.initial_primal_res = norm2(res.primal);
    result.initial_dual_res = norm2(res.dual);
  }
  result.phi_start = phi_of(it.x, it.z, nu);
  result.initial_gap = dot(it.x, it.z);
  long long bound = iteration_bound(result.phi_start, nu, p.epsilon, delta);
  long long max_outer = p.max_outer > 0 ? p.max_outer : 10 * bound;

  while (true) {
    double gap = dot(it.x, it.z);
    if (gap <= p.epsilon) {
      result.status = Status::optimal;
      break;
    }
    if (it.k >= max_outer) {
      result.status = Status::iteration_limit;
      break;
    }

    ScaledSystem sys = build_scaled_system(lp, it.x, it.y, it.z, nu);
    InexactResult inexact =
        inexact_directions(sys, p.kappa, Mode::infeasible, p.inner);

    std::optional<double> alpha;
    try {
      alpha = step_search_infeasible(sys, inexact.dir, p);
    } catch (const DomainError& e) {
      result.status = Status::numerical_failure;
      result.message = e.what();
      break;
    }
    if (!alpha) {
      result.status = Status::infeasibility_certificate;
      result.message = "no admissible step size; no optimal pair with "
                       "max norm <= rho exists";
      break;
    }

    double phi_cur = phi_of(it.x, it.z, nu);
    axpy(*alpha, inexact.dir.dx, it.x);
    axpy(*alpha, inexact.dir.dy, it.y);
    axpy(*alpha, inexact.dir.dz, it.z);
    double phi_next = phi_of(it.x, it.z, nu);

    result.log.push_back(
        make_record(it.k, sys, phi_cur, it.theta, inexact, *alpha, phi_next));
    if (observer)
      observer(IterationView{sys, inexact.dir, inexact.report, *alpha});
    it.theta *= (1.0 - *alpha);
    ++it.k;
  }

  result.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return result;
}

CertifyReport certify_output(const SolveResult& result,
                             const LinearProgram& lp,
                             const SolveParams& params) {
  const int n = lp.num_cols();
  const double nu = params.effective_nu(n);
  const double delta = params.delta(n);

  CertifyReport rep;
  rep.decrease_ok = true;
  for (const IterationRecord& rec : result.log)
    if (rec.delta_achieved < delta - kDecreaseSlack) rep.decrease_ok = false;

  rep.iteration_bound =
      iteration_bound(result.phi_start, nu, params.epsilon, delta);
  rep.bound_ok =
      static_cast<long long>(result.log.size()) <= rep.iteration_bound;

  if (params.mode == Mode::infeasible) {
    double theta = 1.0;
    for (const IterationRecord& rec : result.log) {
      if (std::fabs(rec.theta - theta) > 1e-8 * (1.0 + theta))
        rep.theta_ok = false;
      theta *= (1.0 - rec.alpha);
    }
    Residuals res = nonlinear_residual(lp, result.final, 0.0);
    double pr = norm2(res.primal), dr = norm2(res.dual);
    double theta_final = result.final.theta;
    if (std::fabs(pr - theta_final * result.initial_primal_res) >
        1e-8 * (1.0 + result.initial_primal_res))
      rep.theta_ok = false;
    if (std::fabs(dr - theta_final * result.initial_dual_res) >
        1e-8 * (1.0 + result.initial_dual_res))
      rep.theta_ok = false;

    if (result.status == Status::optimal) {
      double res_norm = std::sqrt(pr * pr + dr * dr);
      double init_norm = std::sqrt(result.initial_primal_res * result.initial_primal_res +
                                   result.initial_dual_res * result.initial_dual_res);
      double limit = params.epsilon * init_norm / result.initial_gap;
      rep.residual_ok = res_norm <= limit * (1.0 + 1e-8) + 1e-12;
    }
  }
  return rep;
}

std::optional<Iterate> heuristic_feasible_start(const LinearProgram& lp) {
  const int n = lp.num_cols();
  Vector ones(n, 1.0);
  DenseMatrix M = form_normal_matrix(lp.A, ones);
  Vector w;
  try {
    w = dense_spd_solve(M, lp.b);
  } catch (const DomainError&) {
    return std::nullopt;
  }
  Iterate it;
  it.x = lp.A.matvec_transpose(w);
  it.y.assign(lp.num_rows(), 0.0);
  it.z = lp.c;
  for (int j = 0; j < n; ++j)
    if (it.x[j] <= 0.0 || it.z[j] <= 0.0) return std::nullopt;
  return it;
}

std::string log_to_csv(const std::vector<IterationRecord>& log) {
  std::ostringstream out;
  out << "k,gap,phi,delta_achieved,alpha,theta,norm_xi,cond6a_lhs,cond6a_rhs,"
         "cond6b_lhs,cond6b_rhs,cond6c_lhs,cond6c_rhs,cg_iters,wmin,norm_r\n";
  char buf[64];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  for (const IterationRecord& r : log) {
    out << r.k << ',' << fmt(r.gap) << ',' << fmt(r.phi) << ','
        << fmt(r.delta_achieved) << ',' << fmt(r.alpha) << ',' << fmt(r.theta)
        << ',' << fmt(r.norm_xi) << ',' << fmt(r.cond6a_lhs) << ','
        << fmt(r.cond6a_rhs) << ',' << fmt(r.cond6b_lhs) << ','
        << fmt(r.cond6b_rhs) << ',' << fmt(r.cond6c_lhs) << ','
        << fmt(r.cond6c_rhs) << ',' << r.cg_iters << ',' << fmt(r.wmin) << ','
        << fmt(r.norm_r) << '\n';
  }
  return out.str();
}

}  // namespace potred
