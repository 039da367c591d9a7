#pragma once

#include <vector>

#include "potred/lp.hpp"
#include "potred/vec.hpp"

namespace potred {

enum class Mode { feasible, infeasible };

// Per-iteration scaling of the Newton system: D = X^1/2 Z^-1/2,
// W = (XZ)^1/2, target mu and right-hand sides p, q, r.
struct ScaledSystem {
  const LinearProgram* lp = nullptr;
  Vector x, y, z;
  Vector d, w;
  double w_min = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  double gap = 0.0;  // x^T z
  Vector p, q, r;

  int num_rows() const { return lp->num_rows(); }
  int num_cols() const { return lp->num_cols(); }
};

ScaledSystem build_scaled_system(const LinearProgram& lp, const Vector& x,
                                 const Vector& y, const Vector& z, double nu);

// Scaled direction (du, dy, dv), unscaled (dx, dz), and the complementarity
// residual xi, which may be nonzero only on basic_support.
struct Direction {
  Vector du, dy, dv;
  Vector dx, dz;
  Vector xi;
  std::vector<int> basic_support;  // empty for the exact oracle
};

struct ConditionReport {
  bool holds_6a = false, holds_6b = false, holds_6c = false;
  double lhs_6a = 0.0, rhs_6a = 0.0;
  double lhs_6b = 0.0, rhs_6b = 0.0;
  double lhs_6c = 0.0, rhs_6c = 0.0;
  double kappa = 0.0;
  Mode mode = Mode::feasible;

  // feasible mode gates on the first two conditions only
  bool pass() const {
    return holds_6a && holds_6b && (mode == Mode::feasible || holds_6c);
  }
};

ConditionReport check_conditions(const ScaledSystem& sys, const Direction& dir,
                                 double kappa, Mode mode);

// Acceptance rule gating the inner iterative solve. The residual rule uses the
// residual conditions above; the alternatives gate on the basic residual.
struct AcceptanceRule {
  enum class Kind { residual, monteiro, gondzio } kind = Kind::residual;
  double sigma = 0.5;  // monteiro
  double gamma = 0.1;  // monteiro
  double eta = 0.5;    // gondzio
};

struct InexactControls {
  int max_iters = 0;       // 0: defaults to 10 m
  double pivot_tol = 1e-8;
  AcceptanceRule rule;
  bool break_lift = false;  // test-only fault injection
};

struct InnerStats {
  int cg_iters = 0;
  bool used_fallback = false;
};

struct InexactResult {
  Direction dir;
  ConditionReport report;
  InnerStats stats;
};

// Exact-direction oracle via the dense normal-equations solve; xi = 0.
Direction exact_directions(const ScaledSystem& sys);

// Truncated CG on the normal equations with the residual lifted through a
// maximum-weight basis into the complementarity row; accepts at the first
// CG iterate whose conditions pass, falling back to the exact oracle.
InexactResult inexact_directions(const ScaledSystem& sys, double kappa,
                                 Mode mode, const InexactControls& controls);

struct AltConditionResult {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

// |xi_B| <= (1-gamma) sigma / (4 sqrt(n)) * sqrt(gap/n)
AltConditionResult alt_condition_monteiro(const Vector& xi_B, double sigma,
                                          double gamma, int n, double gap);

// |W_B xi_B|_inf <= eta * gap / n
AltConditionResult alt_condition_gondzio(const Vector& w_B, const Vector& xi_B,
                                         double eta, int n, double gap);

struct RelErrReport {
  double rel_err_du = 0.0;
  double rel_err_dv = 0.0;
  double bound = 0.0;  // kappa / (1 - kappa)
  bool degenerate = false;
  bool norm_du_ok = false;  // |du*| >= (1-kappa)|du|
  bool norm_dv_ok = false;
};

RelErrReport relative_error_report(const Direction& dir,
                                   const Direction& exact_dir, double kappa);

}  // namespace potred
