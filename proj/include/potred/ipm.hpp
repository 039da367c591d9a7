#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "potred/lp.hpp"
#include "potred/scaled_newton.hpp"
#include "potred/vec.hpp"

namespace potred {

struct Iterate {
  Vector x, y, z;
  int k = 0;
  double theta = 1.0;
};

struct SolveParams {
  Mode mode = Mode::feasible;
  double nu = 0.0;       // 0: defaults to sqrt(n)
  double kappa = 0.5;
  double epsilon = 1e-8;
  double rho = 1e4;      // infeasible mode only
  int max_outer = 0;     // 0: 10x the iteration bound, as a safety net
  double backtrack_factor = 0.5;
  int max_backtracks = 40;
  InexactControls inner;

  // delta = 0.15 (1-kappa)^4 in feasible mode,
  // (1-kappa)^4 / (1600 (n+nu)^2) in infeasible mode
  double delta(int n) const;
  double effective_nu(int n) const;
  void validate(int n) const;
};

struct IterationRecord {
  int k = 0;
  double gap = 0.0, phi = 0.0, delta_achieved = 0.0, alpha = 0.0, theta = 0.0;
  double norm_xi = 0.0;
  double cond6a_lhs = 0.0, cond6a_rhs = 0.0;
  double cond6b_lhs = 0.0, cond6b_rhs = 0.0;
  double cond6c_lhs = 0.0, cond6c_rhs = 0.0;
  int cg_iters = 0;
  double wmin = 0.0, norm_r = 0.0;
};

enum class Status { optimal, infeasibility_certificate, iteration_limit, numerical_failure };

std::string to_string(Status s);

struct SolveResult {
  Status status = Status::numerical_failure;
  Iterate final;
  std::vector<IterationRecord> log;
  double phi_start = 0.0;
  double initial_primal_res = 0.0;  // |A x0 - b|, infeasible mode
  double initial_dual_res = 0.0;    // |A^T y0 + z0 - c|
  double initial_gap = 0.0;
  double wall_ms = 0.0;
  std::string message;
};

// Per-iteration hook for validation suites: sees the scaled system, the
// accepted direction and report, and the chosen step size.
struct IterationView {
  const ScaledSystem& sys;
  const Direction& dir;
  const ConditionReport& report;
  double alpha;
};
using IterationObserver = std::function<void(const IterationView&)>;

struct Residuals {
  Vector primal;          // A x - b
  Vector dual;            // A^T y + z - c
  Vector complementarity; // X z - mu e
};

Residuals nonlinear_residual(const LinearProgram& lp, const Iterate& it,
                             double mu);

SolveResult run_feasible(const LinearProgram& lp, const Iterate& start,
                         const SolveParams& params,
                         const IterationObserver& observer = nullptr);

SolveResult run_infeasible(const LinearProgram& lp, const SolveParams& params,
                           const IterationObserver& observer = nullptr);

// Largest step keeping x + a dx > 0 and z + a dz > 0, shrunk by 0.99.
double max_interior_step(const Vector& x, const Vector& z, const Vector& dx,
                         const Vector& dz);

// Guaranteed step sizes: w_min (1-kappa)^3 / (2 |r|) in feasible mode,
// (1-kappa)^3 w_min^2 / (200 (n+nu) x^T z) in infeasible mode.
double guaranteed_alpha_feasible(const ScaledSystem& sys, double kappa);
double guaranteed_alpha_infeasible(const ScaledSystem& sys, double kappa);

// Backtracking search for the potential decrease (feasible mode). Throws
// DomainError on a zero direction; returns nullopt only if even the
// guaranteed step fails the decrease test.
std::optional<double> step_search_feasible(const ScaledSystem& sys,
                                           const Direction& dir,
                                           const SolveParams& params);

// Backtracking search testing both the potential decrease and the gap
// retention inequality; nullopt triggers the infeasibility certificate.
std::optional<double> step_search_infeasible(const ScaledSystem& sys,
                                             const Direction& dir,
                                             const SolveParams& params);

struct CertifyReport {
  bool decrease_ok = false;    // every iteration decreased phi by >= delta
  bool bound_ok = false;       // iterations <= ceil((phi0 - nu ln eps)/delta)
  bool theta_ok = true;        // infeasible mode: residual/theta consistency
  bool residual_ok = true;     // infeasible optimal exit: final residual bound
  long long iteration_bound = 0;

  bool pass() const {
    return decrease_ok && bound_ok && theta_ok && residual_ok;
  }
};

CertifyReport certify_output(const SolveResult& result,
                             const LinearProgram& lp,
                             const SolveParams& params);

// Iteration-log CSV; one row per iteration.
std::string log_to_csv(const std::vector<IterationRecord>& log);

// Heuristic interior start for file inputs: x the min-norm solution of
// A x = b, y = 0, z = c. Returns nullopt unless x > 0 and z > 0.
std::optional<Iterate> heuristic_feasible_start(const LinearProgram& lp);

}  // namespace potred
