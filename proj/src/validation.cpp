#include "potred/validation.hpp"

#include <cmath>

#include "potred/dense.hpp"
#include "potred/generator.hpp"
#include "potred/ipm.hpp"
#include "potred/potential.hpp"
#include "potred/scaled_newton.hpp"

namespace potred {

namespace {

bool wanted(const ValidationConfig& cfg, const std::string& name) {
  return cfg.suite.empty() || cfg.suite == name;
}

// P v = D A^T (A D^2 A^T)^{-1} A D v, via the dense oracle
Vector project(const LinearProgram& lp, const Vector& d, const Vector& v) {
  Vector adv = lp.A.matvec(hadamard(d, v));
  DenseMatrix M = form_normal_matrix(lp.A, d);
  Vector y = dense_spd_solve(M, adv);
  return hadamard(d, lp.A.matvec_transpose(y));
}

void suite_scaling_bound(const ValidationConfig& cfg, SuiteResult& out) {
  Rng rng(17);
  for (int s = 0; s < cfg.samples; ++s) {
    int n = rng.uniform_int(2, 50);
    Vector w(n);
    for (int i = 0; i < n; ++i) w[i] = rng.uniform(1e-6, 10.0);
    WboundResult wb = wbound_gap(w, std::sqrt(double(n)));
    (wb.lhs >= wb.rhs - 1e-12 ? out.passed : out.failed)++;
  }
}

void suite_projection(const ValidationConfig& cfg, SuiteResult& out) {
  for (int s = 0; s < std::max(1, cfg.samples / 20); ++s) {
    auto inst = generate_feasible_instance(1000 + s, 3 + s % 6, 12 + s % 9, 0.6);
    Rng rng(s);
    int n = inst.lp.num_cols();
    Vector d(n), v(n);
    for (int j = 0; j < n; ++j) d[j] = rng.uniform(0.1, 5.0);
    for (int j = 0; j < n; ++j) v[j] = rng.uniform(-2.0, 2.0);
    Vector pv = project(inst.lp, d, v);
    Vector ppv = project(inst.lp, d, pv);
    double nv = norm2(v);
    bool ok = norm2(sub(ppv, pv)) <= 1e-8 * nv &&
              norm2(pv) <= (1.0 + 1e-8) * nv &&
              norm2(sub(v, pv)) <= (1.0 + 1e-8) * nv;
    (ok ? out.passed : out.failed)++;
  }
}

struct SolverSuites {
  SuiteResult rel_error{"rel-error"};
  SuiteResult slope{"slope-identity"};
  SuiteResult rbound{"residual-bound"};
  SuiteResult orthogonality{"orthogonality"};
  SuiteResult pythagoras{"pythagoras"};
  SuiteResult xi_support{"xi-support"};
};

void observe_iteration(const IterationView& view, double kappa,
                       SolverSuites& s, Mode mode) {
  const ScaledSystem& sys = view.sys;
  const Direction& dir = view.dir;
  const int n = sys.num_cols();

  // relative-error bound against the exact oracle
  if (view.report.holds_6b) {
    Direction exact = exact_directions(sys);
    RelErrReport rel = relative_error_report(dir, exact, kappa);
    if (rel.degenerate) {
      s.rel_error.skipped++;
    } else {
      double bound = kappa / (1.0 - kappa) + 1e-8;
      bool ok = rel.rel_err_du <= bound && rel.rel_err_dv <= bound &&
                rel.norm_du_ok && rel.norm_dv_ok;
      (ok ? s.rel_error.passed : s.rel_error.failed)++;
    }
  }

  // g1 evaluated two ways
  {
    double wtw = dot(sys.w, sys.w);
    double lhs = -(n + sys.nu) / wtw * dot(sys.r, add(sys.r, dir.xi));
    double rhs = 0.0;
    Vector duv = add(dir.du, dir.dv);
    for (int j = 0; j < n; ++j)
      rhs += ((n + sys.nu) / wtw * sys.w[j] - 1.0 / sys.w[j]) * duv[j];
    double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1e-300});
    (std::fabs(lhs - rhs) <= 1e-10 * scale ? s.slope.passed : s.slope.failed)++;
  }

  // |r| >= mu sqrt(3)/(2 w_min)
  {
    bool ok = norm2(sys.r) >=
              sys.mu * std::sqrt(3.0) / (2.0 * sys.w_min) - 1e-12;
    (ok ? s.rbound.passed : s.rbound.failed)++;
  }

  if (mode == Mode::feasible) {
    double ip = std::fabs(dot(dir.du, dir.dv));
    bool ok = ip <= 1e-10 * norm2(dir.du) * norm2(dir.dv) + 1e-300;
    (ok ? s.orthogonality.passed : s.orthogonality.failed)++;

    Direction exact = exact_directions(sys);
    double lhs = dot(exact.du, exact.du) + dot(exact.dv, exact.dv);
    double rhs = dot(sys.r, sys.r);
    bool pyth = std::fabs(lhs - rhs) <= 1e-10 * std::max(lhs, rhs);
    (pyth ? s.pythagoras.passed : s.pythagoras.failed)++;
  }

  {
    std::vector<char> in_basis(n, 0);
    for (int j : dir.basic_support) in_basis[j] = 1;
    bool ok = true;
    for (int j = 0; j < n; ++j)
      if (!in_basis[j] && dir.xi[j] != 0.0) ok = false;
    (ok ? s.xi_support.passed : s.xi_support.failed)++;
  }
}

}  // namespace

std::vector<SuiteResult> run_validation(const ValidationConfig& cfg) {
  std::vector<SuiteResult> results;

  if (wanted(cfg, "scaling-bound")) {
    SuiteResult r{"scaling-bound"};
    suite_scaling_bound(cfg, r);
    results.push_back(r);
  }
  if (wanted(cfg, "projection")) {
    SuiteResult r{"projection"};
    suite_projection(cfg, r);
    results.push_back(r);
  }

  bool solver_suites =
      cfg.suite.empty() || cfg.suite == "rel-error" || cfg.suite == "slope-identity" ||
      cfg.suite == "residual-bound" || cfg.suite == "orthogonality" ||
      cfg.suite == "pythagoras" || cfg.suite == "xi-support";
  if (solver_suites) {
    SolverSuites s;
    for (int seed = 1; seed <= cfg.seeds; ++seed) {
      int m = 2 + seed % 7;
      int n = 3 * m + seed % 5;
      auto inst = generate_feasible_instance(seed, m, n, 0.7);
      SolveParams params;
      params.mode = Mode::feasible;
      params.kappa = cfg.kappa;
      params.max_outer = 12;  // property collection, not convergence
      params.inner.break_lift = cfg.break_lift;
      Iterate start{inst.strict_start->x, inst.strict_start->y,
                    inst.strict_start->z, 0, 1.0};
      run_feasible(inst.lp, start, params, [&](const IterationView& view) {
        observe_iteration(view, cfg.kappa, s, Mode::feasible);
      });
    }
    for (SuiteResult* r : {&s.rel_error, &s.slope, &s.rbound, &s.orthogonality,
                           &s.pythagoras, &s.xi_support})
      if (wanted(cfg, r->name)) results.push_back(*r);
  }
  return results;
}

bool all_passed(const std::vector<SuiteResult>& results) {
  for (const SuiteResult& r : results)
    if (r.failed > 0 || r.passed == 0) return false;
  return true;
}

}  // namespace potred
