#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "potred/errors.hpp"
#include "potred/generator.hpp"
#include "potred/ipm.hpp"
#include "potred/potential.hpp"

using namespace potred;

TEST_CASE("nonlinear_residual on the reference fixture") {
  LinearProgram lp = testutil::make_e1_lp();
  Iterate it;
  it.x = {1.0, 1.0};
  it.y = {0.0};
  it.z = {1.0, 1.0};
  Residuals res = nonlinear_residual(lp, it, 0.5);
  CHECK(res.primal == Vector{0.0});
  CHECK(res.dual == Vector{0.0, 0.0});
  CHECK(res.complementarity == Vector{0.5, 0.5});

  it.x = {3.0, 1.0};
  res = nonlinear_residual(lp, it, 0.0);
  CHECK(res.primal == Vector{2.0});
}

TEST_CASE("max_interior_step ratio test") {
  double a = max_interior_step({1.0, 1.0}, {1.0, 1.0}, {-1.0, -2.0}, {0.5, 0.5});
  CHECK(a == doctest::Approx(0.99 * 0.5).epsilon(1e-15));
  // no blocking component: step capped at 1
  double b = max_interior_step({1.0}, {1.0}, {1.0}, {2.0});
  CHECK(b == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("guaranteed step sizes at the unit reference point") {
  LinearProgram lp = testutil::make_e1_lp();
  ScaledSystem sys = testutil::make_e1_system(lp);
  // w_min (1-kappa)^3 / (2 |r|) with |r| = 0.5857864
  CHECK(guaranteed_alpha_feasible(sys, 0.0) ==
        doctest::Approx(0.8535533905932737).epsilon(1e-13));
  CHECK(guaranteed_alpha_feasible(sys, 0.5) ==
        doctest::Approx(0.8535533905932737 / 8.0).epsilon(1e-13));
  // (1-kappa)^3 w_min^2 / (200 (n+nu) gap) = 1/1365.6854
  CHECK(guaranteed_alpha_infeasible(sys, 0.0) ==
        doctest::Approx(7.322330470336312e-4).epsilon(1e-10));
}

TEST_CASE("step search rejects a zero direction") {
  LinearProgram lp = testutil::make_e1_lp();
  ScaledSystem sys = testutil::make_e1_system(lp);
  Direction dir;
  dir.du = dir.dv = dir.dx = dir.dz = {0.0, 0.0};
  dir.dy = {0.0};
  dir.xi = {0.0, 0.0};
  SolveParams p;
  CHECK_THROWS_AS(step_search_feasible(sys, dir, p), DomainError);
  CHECK_THROWS_AS(step_search_infeasible(sys, dir, p), DomainError);
}

TEST_CASE("step search achieves the required decrease on the fixture") {
  LinearProgram lp = testutil::make_e1_lp();
  ScaledSystem sys = testutil::make_e1_system(lp);
  Direction dir = exact_directions(sys);
  SolveParams p;
  p.kappa = 0.0;
  auto alpha = step_search_feasible(sys, dir, p);
  REQUIRE(alpha.has_value());
  double phi0 = 0.980258143468547;
  Vector x{1.0, 1.0}, z{1.0, 1.0};
  axpy(*alpha, dir.dx, x);
  axpy(*alpha, dir.dz, z);
  double phi1 = potential(x, z, std::sqrt(2.0)).phi;
  CHECK(phi0 - phi1 >= 0.15);
}

TEST_CASE("parameter validation") {
  SolveParams p;
  p.kappa = 1.0;
  CHECK_THROWS_AS(p.validate(4), ParamError);
  p.kappa = -0.1;
  CHECK_THROWS_AS(p.validate(4), ParamError);
  p.kappa = 0.5;
  p.nu = 1.0;  // below sqrt(4)
  CHECK_THROWS_AS(p.validate(4), ParamError);
  p.nu = 8.0;  // = 2n: accepted in infeasible mode
  p.mode = Mode::infeasible;
  CHECK_NOTHROW(p.validate(4));
  p.nu = 8.1;  // > 2n: rejected
  CHECK_THROWS_AS(p.validate(4), ParamError);
  p.nu = 8.0;
  p.rho = 0.0;
  CHECK_THROWS_AS(p.validate(4), ParamError);
}

TEST_CASE("delta formulas") {
  SolveParams p;
  p.kappa = 0.5;
  p.mode = Mode::feasible;
  CHECK(p.delta(10) == doctest::Approx(0.15 * 0.0625).epsilon(1e-15));
  p.mode = Mode::infeasible;
  double nnu = 10.0 + std::sqrt(10.0);
  CHECK(p.delta(10) ==
        doctest::Approx(0.0625 / (1600.0 * nnu * nnu)).epsilon(1e-13));
}

TEST_CASE("run_feasible decreases the potential by delta every iteration") {
  LinearProgram lp = testutil::make_e1_lp();
  Iterate start;
  start.x = {1.0, 1.0};
  start.y = {0.0};
  start.z = {1.0, 1.0};
  SolveParams p;
  p.kappa = 0.0;
  SolveResult res = run_feasible(lp, start, p);
  CHECK(res.status == Status::optimal);
  CHECK(dot(res.final.x, res.final.z) <= p.epsilon);
  double delta = p.delta(2);
  for (const auto& rec : res.log) CHECK(rec.delta_achieved >= delta - 1e-10);
  CertifyReport cert = certify_output(res, lp, p);
  CHECK(cert.decrease_ok);
  CHECK(cert.bound_ok);
  CHECK(cert.pass());
}

TEST_CASE("run_feasible rejects an infeasible start") {
  LinearProgram lp = testutil::make_e1_lp();
  Iterate start;
  start.x = {1.0, 1.0};
  start.y = {0.0};
  start.z = {1.0, 1.0};
  LinearProgram bad = lp;
  bad.b = {3.0};  // A x0 != b
  CHECK_THROWS_AS(run_feasible(bad, start, SolveParams{}), ParamError);
  start.x = {1.0, -1.0};
  CHECK_THROWS_AS(run_feasible(lp, start, SolveParams{}), ParamError);
}

TEST_CASE("run_feasible on generated instances across kappa") {
  for (int seed : {1, 5}) {
    auto inst = generate_feasible_instance(seed, 3, 10, 0.6);
    Iterate start;
    start.x = inst.strict_start->x;
    start.y = inst.strict_start->y;
    start.z = inst.strict_start->z;
    for (double kappa : {0.0, 0.6}) {
      SolveParams p;
      p.kappa = kappa;
      SolveResult res = run_feasible(inst.lp, start, p);
      CHECK(res.status == Status::optimal);
      CertifyReport cert = certify_output(res, inst.lp, p);
      CHECK(cert.pass());
    }
  }
}

TEST_CASE("run_infeasible solves a bounded instance from a cold start") {
  auto inst = generate_bounded_optimal_instance(3, 2, 5, 10.0);
  SolveParams p;
  p.mode = Mode::infeasible;
  p.rho = 10.0;
  SolveResult res = run_infeasible(inst.lp, p);
  REQUIRE(res.status == Status::optimal);
  CertifyReport cert = certify_output(res, inst.lp, p);
  CHECK(cert.decrease_ok);
  CHECK(cert.bound_ok);
  CHECK(cert.theta_ok);
  CHECK(cert.residual_ok);
  // final point approaches feasibility with the nonlinear residual damped
  // by the accumulated theta
  Residuals r = nonlinear_residual(inst.lp, res.final, 0.0);
  CHECK(norm2(r.primal) <=
        res.final.theta * res.initial_primal_res + 1e-8);
}

TEST_CASE("run_infeasible certifies an infeasible program") {
  // x1 + x2 = -1 has no nonnegative solution
  LinearProgram lp;
  lp.A = SparseMatrix::from_triplets(1, 2, {{0, 0, 1.0}, {0, 1, 1.0}});
  lp.b = {-1.0};
  lp.c = {1.0, 1.0};
  for (double rho : {1.0, 10.0}) {
    SolveParams p;
    p.mode = Mode::infeasible;
    p.rho = rho;
    SolveResult res = run_infeasible(lp, p);
    CHECK(res.status == Status::infeasibility_certificate);
    CertifyReport cert = certify_output(res, lp, p);
    CHECK(cert.decrease_ok);
    CHECK(cert.theta_ok);
  }
}

TEST_CASE("certify_output flags a corrupted log") {
  auto inst = generate_bounded_optimal_instance(7, 2, 5, 10.0);
  SolveParams p;
  p.mode = Mode::infeasible;
  p.rho = 10.0;
  SolveResult res = run_infeasible(inst.lp, p);
  REQUIRE(res.status == Status::optimal);
  REQUIRE(!res.log.empty());

  SolveResult bad = res;
  bad.log[0].delta_achieved = -1.0;
  CHECK_FALSE(certify_output(bad, inst.lp, p).decrease_ok);

  bad = res;
  bad.log.back().theta = bad.log.back().theta * 2.0 + 1.0;
  CHECK_FALSE(certify_output(bad, inst.lp, p).theta_ok);

  bad = res;
  bad.phi_start = 1e9;  // inflates the bound; log length still fine
  CHECK(certify_output(bad, inst.lp, p).bound_ok);
  bad.phi_start = res.phi_start;
  bad.log.resize(0);
  CHECK(certify_output(bad, inst.lp, p).bound_ok);
}

TEST_CASE("iteration count stays within the certified bound") {
  for (int seed : {2, 6}) {
    auto inst = generate_feasible_instance(seed, 3, 9, 0.6);
    Iterate start{inst.strict_start->x, inst.strict_start->y,
                  inst.strict_start->z};
    SolveParams p;
    SolveResult res = run_feasible(inst.lp, start, p);
    REQUIRE(res.status == Status::optimal);
    CertifyReport cert = certify_output(res, inst.lp, p);
    CHECK(static_cast<long long>(res.log.size()) <= cert.iteration_bound);
  }
}

TEST_CASE("csv log format") {
  IterationRecord rec;
  rec.k = 3;
  rec.gap = 1.5;
  rec.alpha = 0.25;
  rec.cg_iters = 7;
  std::string csv = log_to_csv({rec});
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header ==
        "k,gap,phi,delta_achieved,alpha,theta,norm_xi,cond6a_lhs,cond6a_rhs,"
        "cond6b_lhs,cond6b_rhs,cond6c_lhs,cond6c_rhs,cg_iters,wmin,norm_r");
  CHECK(row.substr(0, 6) == "3,1.5,");
}

TEST_CASE("heuristic start on the reference fixture") {
  LinearProgram lp = testutil::make_e1_lp();
  auto it = heuristic_feasible_start(lp);
  REQUIRE(it.has_value());
  CHECK(it->x[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(it->x[1] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(it->z == lp.c);

  LinearProgram neg = lp;
  neg.b = {-2.0};  // min-norm solution is negative
  CHECK_FALSE(heuristic_feasible_start(neg).has_value());
  neg = lp;
  neg.c = {1.0, -1.0};  // z = c not positive
  CHECK_FALSE(heuristic_feasible_start(neg).has_value());
}

TEST_CASE("observer sees every logged iteration") {
  auto inst = generate_feasible_instance(4, 3, 9, 0.6);
  Iterate start{inst.strict_start->x, inst.strict_start->y,
                inst.strict_start->z};
  int calls = 0;
  SolveParams p;
  SolveResult res = run_feasible(inst.lp, start, p,
                                 [&](const IterationView& v) {
                                   ++calls;
                                   CHECK(v.alpha > 0.0);
                                   CHECK(v.report.pass());
                                 });
  CHECK(calls == static_cast<int>(res.log.size()));
}
