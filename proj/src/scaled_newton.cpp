#include "potred/scaled_newton.hpp"

#include <cmath>

#include "potred/basis.hpp"
#include "potred/cg.hpp"
#include "potred/dense.hpp"
#include "potred/errors.hpp"

namespace potred {

namespace {

// zero floor for (6b) when kappa or min(|du|,|dv|) vanishes
constexpr double kXiFloor = 1e-12;

Vector normal_rhs(const ScaledSystem& sys) {
  // g = p + AD q - AD r, from eliminating du and dv in the scaled system
  Vector qr = sub(sys.q, sys.r);
  for (int j = 0; j < sys.num_cols(); ++j) qr[j] *= sys.d[j];
  return add(sys.p, sys.lp->A.matvec(qr));
}

// Candidate direction from a normal-equations iterate dy and residual s:
// the dual row is exact, s is lifted through the basis into xi, and the
// third-row identity du + dv = r + xi fixes du (making the primal row
// exact as well).
Direction build_candidate(const ScaledSystem& sys, const Vector& dy,
                          const Vector& s, const BasisFactorization& fac) {
  const int n = sys.num_cols();
  Direction dir;
  dir.dy = dy;
  dir.dv = sys.q;
  Vector aty = sys.lp->A.matvec_transpose(dy);
  for (int j = 0; j < n; ++j) dir.dv[j] -= sys.d[j] * aty[j];

  dir.xi.assign(n, 0.0);
  Vector t_B = fac.solve(s);
  const auto& basic = fac.basic();
  for (std::size_t i = 0; i < basic.size(); ++i)
    dir.xi[basic[i]] = t_B[i] / sys.d[basic[i]];
  dir.basic_support = basic;

  dir.du.resize(n);
  dir.dx.resize(n);
  dir.dz.resize(n);
  for (int j = 0; j < n; ++j) {
    dir.du[j] = sys.r[j] + dir.xi[j] - dir.dv[j];
    dir.dx[j] = sys.d[j] * dir.du[j];
    dir.dz[j] = dir.dv[j] / sys.d[j];
  }
  return dir;
}

bool rule_pass(const ScaledSystem& sys, const Direction& dir,
               const ConditionReport& rep, const AcceptanceRule& rule,
               Mode mode) {
  switch (rule.kind) {
    case AcceptanceRule::Kind::residual:
      return rep.pass();
    case AcceptanceRule::Kind::monteiro: {
      Vector xi_B;
      for (int j : dir.basic_support) xi_B.push_back(dir.xi[j]);
      return alt_condition_monteiro(xi_B, rule.sigma, rule.gamma,
                                    sys.num_cols(), sys.gap)
          .holds;
    }
    case AcceptanceRule::Kind::gondzio: {
      Vector xi_B, w_B;
      for (int j : dir.basic_support) {
        xi_B.push_back(dir.xi[j]);
        w_B.push_back(sys.w[j]);
      }
      return alt_condition_gondzio(w_B, xi_B, rule.eta, sys.num_cols(),
                                   sys.gap)
          .holds;
    }
  }
  (void)mode;
  return false;
}

}  // namespace

ScaledSystem build_scaled_system(const LinearProgram& lp, const Vector& x,
                                 const Vector& y, const Vector& z, double nu) {
  const int m = lp.num_rows(), n = lp.num_cols();
  if (static_cast<int>(x.size()) != n || static_cast<int>(z.size()) != n ||
      static_cast<int>(y.size()) != m)
    throw DimensionError("build_scaled_system: size mismatch");

  ScaledSystem sys;
  sys.lp = &lp;
  sys.x = x;
  sys.y = y;
  sys.z = z;
  sys.nu = nu;
  sys.d.resize(n);
  sys.w.resize(n);
  sys.gap = 0.0;
  for (int j = 0; j < n; ++j) {
    if (x[j] <= 0.0 || z[j] <= 0.0)
      throw DomainError("build_scaled_system: iterate left the interior");
    sys.d[j] = std::sqrt(x[j] / z[j]);
    sys.w[j] = std::sqrt(x[j] * z[j]);
    sys.gap += x[j] * z[j];
  }
  sys.w_min = min_element(sys.w);
  sys.mu = sys.gap / (n + nu);

  sys.p = sub(lp.b, lp.A.matvec(x));
  Vector dual = sub(sub(lp.c, lp.A.matvec_transpose(y)), z);
  sys.q.resize(n);
  sys.r.resize(n);
  for (int j = 0; j < n; ++j) {
    sys.q[j] = sys.d[j] * dual[j];
    sys.r[j] = -sys.w[j] + sys.mu / sys.w[j];
  }
  return sys;
}

ConditionReport check_conditions(const ScaledSystem& sys, const Direction& dir,
                                 double kappa, Mode mode) {
  const int n = sys.num_cols();
  ConditionReport rep;
  rep.kappa = kappa;
  rep.mode = mode;

  double r_norm2 = dot(sys.r, sys.r);
  double w_norm2 = dot(sys.w, sys.w);

  rep.lhs_6a = -dot(sys.r, dir.xi);
  rep.rhs_6a = kappa * r_norm2;
  rep.holds_6a = rep.lhs_6a <= rep.rhs_6a;

  rep.lhs_6b = norm2(dir.xi);
  rep.rhs_6b = kappa * std::min(norm2(dir.du), norm2(dir.dv));
  rep.holds_6b = rep.lhs_6b <= rep.rhs_6b || rep.lhs_6b <= kXiFloor;

  rep.lhs_6c = -dot(sys.w, dir.xi);
  rep.rhs_6c = kappa * n / (n + sys.nu) * w_norm2;
  rep.holds_6c = rep.lhs_6c <= rep.rhs_6c;
  return rep;
}

Direction exact_directions(const ScaledSystem& sys) {
  const int n = sys.num_cols();
  DenseMatrix M = form_normal_matrix(sys.lp->A, sys.d);
  Vector g = normal_rhs(sys);

  Direction dir;
  dir.dy = dense_spd_solve(M, g);
  dir.dv = sys.q;
  Vector aty = sys.lp->A.matvec_transpose(dir.dy);
  for (int j = 0; j < n; ++j) dir.dv[j] -= sys.d[j] * aty[j];
  dir.xi.assign(n, 0.0);
  dir.du.resize(n);
  dir.dx.resize(n);
  dir.dz.resize(n);
  for (int j = 0; j < n; ++j) {
    dir.du[j] = sys.r[j] - dir.dv[j];
    dir.dx[j] = sys.d[j] * dir.du[j];
    dir.dz[j] = dir.dv[j] / sys.d[j];
  }
  return dir;
}

InexactResult inexact_directions(const ScaledSystem& sys, double kappa,
                                 Mode mode, const InexactControls& controls) {
  if (!(kappa >= 0.0 && kappa < 1.0))
    throw ParamError("kappa must be in [0, 1)");
  const SparseMatrix& A = sys.lp->A;
  const int m = sys.num_rows();

  Vector g = normal_rhs(sys);
  BasisFactorization fac = select_basis(A, sys.d, controls.pivot_tol);
  Vector diag = normal_diagonal(A, sys.d);

  auto apply = [&](const Vector& v) { return normal_apply(A, sys.d, v); };
  auto precond = [&](const Vector& v) {
    Vector out(v);
    for (int i = 0; i < m; ++i)
      if (diag[i] > 0.0) out[i] /= diag[i];
    return out;
  };

  // conditions are checked every iteration at desk scale
  const int check_every = m <= 2000 ? 1 : 5;

  InexactResult result;
  bool have = false;
  auto accept = [&](const CgOutcome& outcome) {
    if (outcome.iterations % check_every != 0) return false;
    Direction cand = build_candidate(sys, outcome.solution, outcome.residual, fac);
    ConditionReport rep = check_conditions(sys, cand, kappa, mode);
    if (!rule_pass(sys, cand, rep, controls.rule, mode)) return false;
    // guard against drift of the recursive residual before accepting
    Vector s_true = sub(g, apply(outcome.solution));
    cand = build_candidate(sys, outcome.solution, s_true, fac);
    rep = check_conditions(sys, cand, kappa, mode);
    if (!rule_pass(sys, cand, rep, controls.rule, mode)) return false;
    result.dir = std::move(cand);
    result.report = rep;
    have = true;
    return true;
  };

  int max_iters = controls.max_iters > 0 ? controls.max_iters : 10 * m;
  CgOutcome outcome = conjugate_gradients(apply, g, precond, accept, max_iters);
  result.stats.cg_iters = outcome.iterations;

  if (!have) {
    // xi = 0 passes every condition
    result.dir = exact_directions(sys);
    result.report = check_conditions(sys, result.dir, kappa, mode);
    result.stats.used_fallback = true;
  }

  if (controls.break_lift && !result.dir.basic_support.empty()) {
    // fault injection: move one residual component to a nonbasic index
    std::vector<char> in_basis(sys.num_cols(), 0);
    for (int j : result.dir.basic_support) in_basis[j] = 1;
    int nonbasic = -1;
    for (int j = 0; j < sys.num_cols(); ++j)
      if (!in_basis[j]) {
        nonbasic = j;
        break;
      }
    if (nonbasic >= 0) {
      int b0 = result.dir.basic_support.front();
      result.dir.xi[nonbasic] = result.dir.xi[b0] != 0.0 ? result.dir.xi[b0] : 1e-3;
      result.dir.xi[b0] = 0.0;
    }
  }
  return result;
}

AltConditionResult alt_condition_monteiro(const Vector& xi_B, double sigma,
                                          double gamma, int n, double gap) {
  if (!(sigma > 0.0 && sigma < 1.0) || !(gamma > 0.0 && gamma < 1.0))
    throw ParamError("alt_condition_monteiro: sigma, gamma must be in (0,1)");
  if (!(gap > 0.0)) throw ParamError("alt_condition_monteiro: gap must be > 0");
  AltConditionResult res;
  res.lhs = norm2(xi_B);
  res.rhs = (1.0 - gamma) * sigma / (4.0 * std::sqrt(double(n))) *
            std::sqrt(gap / n);
  res.holds = res.lhs <= res.rhs;
  return res;
}

AltConditionResult alt_condition_gondzio(const Vector& w_B, const Vector& xi_B,
                                         double eta, int n, double gap) {
  if (!(eta > 0.0 && eta < 1.0))
    throw ParamError("alt_condition_gondzio: eta must be in (0,1)");
  AltConditionResult res;
  for (std::size_t i = 0; i < xi_B.size(); ++i)
    res.lhs = std::max(res.lhs, std::fabs(w_B[i] * xi_B[i]));
  res.rhs = eta * gap / n;
  res.holds = res.lhs <= res.rhs;
  return res;
}

RelErrReport relative_error_report(const Direction& dir,
                                   const Direction& exact_dir, double kappa) {
  RelErrReport rep;
  rep.bound = kappa / (1.0 - kappa);
  double nu_star = norm2(exact_dir.du);
  double nv_star = norm2(exact_dir.dv);
  double tiny = 1e-12 * (nu_star + nv_star + norm2(dir.du) + norm2(dir.dv));
  if (nu_star <= tiny || nv_star <= tiny) {
    rep.degenerate = true;
    return rep;
  }
  rep.rel_err_du = norm2(sub(dir.du, exact_dir.du)) / nu_star;
  rep.rel_err_dv = norm2(sub(dir.dv, exact_dir.dv)) / nv_star;
  rep.norm_du_ok = nu_star >= (1.0 - kappa) * norm2(dir.du) - 1e-10;
  rep.norm_dv_ok = nv_star >= (1.0 - kappa) * norm2(dir.dv) - 1e-10;
  return rep;
}

}  // namespace potred
