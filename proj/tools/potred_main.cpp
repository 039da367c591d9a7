#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "potred/errors.hpp"
#include "potred/generator.hpp"
#include "potred/ipm.hpp"
#include "potred/mps.hpp"
#include "potred/validation.hpp"

namespace {

using namespace potred;

constexpr int kExitOptimal = 0;
constexpr int kExitFailure = 1;
constexpr int kExitCertificate = 2;
constexpr int kExitIterationLimit = 3;
constexpr int kExitInputError = 4;

int status_exit_code(Status s) {
  switch (s) {
    case Status::optimal: return kExitOptimal;
    case Status::infeasibility_certificate: return kExitCertificate;
    case Status::iteration_limit: return kExitIterationLimit;
    case Status::numerical_failure: return kExitFailure;
  }
  return kExitFailure;
}

struct CommonOpts {
  std::string mode = "feasible";
  std::string input;
  std::vector<int> generate;  // m, n, seed
  double kappa = 0.5;
  double nu = 0.0;  // 0: sqrt(n)
  double eps = 1e-8;
  double rho = 1e4;
  std::string condition = "residual";
  double sigma = 0.5, gamma = 0.1, eta = 0.5;
  std::string out_dir = ".";
  long long max_outer = 0;
  int cg_max = 0;
  bool break_lift = false;
};

AcceptanceRule make_rule(const CommonOpts& o) {
  AcceptanceRule rule;
  if (o.condition == "residual") rule.kind = AcceptanceRule::Kind::residual;
  else if (o.condition == "monteiro") rule.kind = AcceptanceRule::Kind::monteiro;
  else if (o.condition == "gondzio") rule.kind = AcceptanceRule::Kind::gondzio;
  else throw ParamError("unknown condition variant '" + o.condition + "'");
  rule.sigma = o.sigma;
  rule.gamma = o.gamma;
  rule.eta = o.eta;
  return rule;
}

SolveParams make_params(const CommonOpts& o, int n) {
  SolveParams p;
  p.mode = o.mode == "infeasible" ? Mode::infeasible : Mode::feasible;
  p.kappa = o.kappa;
  p.nu = o.nu;
  p.epsilon = o.eps;
  p.rho = o.rho;
  p.max_outer = static_cast<int>(o.max_outer);
  p.inner.max_iters = o.cg_max;
  p.inner.rule = make_rule(o);
  p.inner.break_lift = o.break_lift;
  p.validate(n);
  return p;
}

int cmd_solve(const CommonOpts& opts) {
  if (opts.mode != "feasible" && opts.mode != "infeasible") {
    std::cerr << "error: --mode must be feasible or infeasible\n";
    return kExitInputError;
  }
  LinearProgram lp;
  std::optional<Iterate> start;
  try {
    if (!opts.generate.empty()) {
      if (opts.generate.size() != 3)
        throw ParamError("--generate expects m,n,seed");
      auto inst = generate_feasible_instance(opts.generate[2],
                                             opts.generate[0],
                                             opts.generate[1], 0.7);
      lp = std::move(inst.lp);
      start = Iterate{inst.strict_start->x, inst.strict_start->y,
                      inst.strict_start->z, 0, 1.0};
    } else if (!opts.input.empty()) {
      lp = load_lp_file(opts.input);
    } else {
      throw ParamError("either --input or --generate is required");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  SolveParams params;
  try {
    params = make_params(opts, lp.num_cols());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  SolveResult result;
  try {
    if (params.mode == Mode::feasible) {
      if (!start) {
        start = heuristic_feasible_start(lp);
        if (!start) {
          std::cerr << "error: no strictly feasible start found for this "
                       "instance; use --mode infeasible\n";
          return kExitInputError;
        }
      }
      result = run_feasible(lp, *start, params);
    } else {
      result = run_infeasible(lp, params);
    }
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  std::filesystem::create_directories(opts.out_dir);
  std::ofstream log(std::filesystem::path(opts.out_dir) / "iterlog.csv");
  log << log_to_csv(result.log);

  double gap = dot(result.final.x, result.final.z);
  std::printf("status=%s iterations=%zu final_gap=%.6e wall_ms=%.2f\n",
              to_string(result.status).c_str(), result.log.size(), gap,
              result.wall_ms);
  if (!result.message.empty()) std::printf("note: %s\n", result.message.c_str());
  return status_exit_code(result.status);
}

struct ExperimentOpts {
  CommonOpts common;
  std::vector<long long> seeds;
  std::vector<double> kappa_grid{0.5};
  std::vector<std::string> conditions{"residual"};
  int m = 5, n = 20;
};

int cmd_experiment(const ExperimentOpts& opts) {
  std::filesystem::create_directories(opts.common.out_dir);
  std::ofstream csv(std::filesystem::path(opts.common.out_dir) /
                    "summary.csv");
  csv << "instance,mode,condition,kappa,nu,status,outer_iters,total_cg_iters,"
         "final_gap,wall_ms\n";
  for (long long seed : opts.seeds)
    for (const std::string& condition : opts.conditions)
      for (double kappa : opts.kappa_grid) {
        CommonOpts cell = opts.common;
        cell.kappa = kappa;
        cell.condition = condition;
        std::string instance = "gen_s" + std::to_string(seed) + "_m" +
                               std::to_string(opts.m) + "_n" +
                               std::to_string(opts.n);
        try {
          auto inst = generate_feasible_instance(seed, opts.m, opts.n, 0.7);
          SolveParams params = make_params(cell, inst.lp.num_cols());
          SolveResult result;
          if (params.mode == Mode::feasible) {
            Iterate start{inst.strict_start->x, inst.strict_start->y,
                          inst.strict_start->z, 0, 1.0};
            result = run_feasible(inst.lp, start, params);
          } else {
            result = run_infeasible(inst.lp, params);
          }
          long long cg_total = 0;
          for (const auto& rec : result.log) cg_total += rec.cg_iters;
          char buf[64];
          std::snprintf(buf, sizeof(buf), "%.17g",
                        dot(result.final.x, result.final.z));
          csv << instance << ',' << cell.mode << ',' << condition << ','
              << kappa << ',' << params.effective_nu(inst.lp.num_cols()) << ','
              << to_string(result.status) << ',' << result.log.size() << ','
              << cg_total << ',' << buf << ',' << result.wall_ms << "\n";
        } catch (const std::exception& e) {
          csv << instance << ',' << cell.mode << ',' << condition << ','
              << kappa << ",,error,,,," << "\n";
          std::cerr << "cell " << instance << " failed: " << e.what() << "\n";
        }
      }
  return 0;
}

struct ValidateOpts {
  int seeds = 100;
  int samples = 1000;
  std::string suite;
  double kappa = 0.5;
  bool break_lift = false;
};

int cmd_validate(const ValidateOpts& opts) {
  ValidationConfig cfg;
  cfg.seeds = opts.seeds;
  cfg.samples = opts.samples;
  cfg.suite = opts.suite;
  cfg.kappa = opts.kappa;
  cfg.break_lift = opts.break_lift;
  auto results = run_validation(cfg);
  if (results.empty()) {
    std::cerr << "error: unknown suite '" << opts.suite << "'\n";
    return kExitInputError;
  }
  for (const auto& r : results)
    std::printf("%-14s passed=%d failed=%d skipped=%d\n", r.name.c_str(),
                r.passed, r.failed, r.skipped);
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inexact potential reduction interior point solver"};
  app.require_subcommand(1);

  CommonOpts solve_opts;
  auto* solve = app.add_subcommand("solve", "solve one LP");
  solve->add_option("--mode", solve_opts.mode, "feasible | infeasible");
  solve->add_option("--input", solve_opts.input, "MPS or triplet file");
  solve->add_option("--generate", solve_opts.generate,
                    "m,n,seed instance description")->delimiter(',');
  solve->add_option("--kappa", solve_opts.kappa);
  solve->add_option("--nu", solve_opts.nu);
  solve->add_option("--eps", solve_opts.eps);
  solve->add_option("--rho", solve_opts.rho);
  solve->add_option("--condition", solve_opts.condition,
                    "residual | monteiro | gondzio");
  solve->add_option("--sigma", solve_opts.sigma);
  solve->add_option("--gamma", solve_opts.gamma);
  solve->add_option("--eta", solve_opts.eta);
  solve->add_option("--out", solve_opts.out_dir);
  solve->add_option("--max-outer", solve_opts.max_outer);
  solve->add_option("--cg-max", solve_opts.cg_max);
  solve->add_flag("--break-lift", solve_opts.break_lift);

  ExperimentOpts exp_opts;
  auto* experiment = app.add_subcommand("experiment", "seeded sweep");
  experiment->add_option("--mode", exp_opts.common.mode);
  experiment->add_option("--seeds", exp_opts.seeds)->delimiter(',');
  experiment->add_option("--kappa-grid", exp_opts.kappa_grid)->delimiter(',');
  experiment->add_option("--conditions", exp_opts.conditions)->delimiter(',');
  experiment->add_option("--m", exp_opts.m);
  experiment->add_option("--n", exp_opts.n);
  experiment->add_option("--nu", exp_opts.common.nu);
  experiment->add_option("--eps", exp_opts.common.eps);
  experiment->add_option("--sigma", exp_opts.common.sigma);
  experiment->add_option("--gamma", exp_opts.common.gamma);
  experiment->add_option("--eta", exp_opts.common.eta);
  experiment->add_option("--out", exp_opts.common.out_dir);
  experiment->add_option("--max-outer", exp_opts.common.max_outer);

  ValidateOpts val_opts;
  auto* validate = app.add_subcommand("validate", "randomized property suites");
  validate->add_option("--seeds", val_opts.seeds);
  validate->add_option("--samples", val_opts.samples);
  validate->add_option("--suite", val_opts.suite);
  validate->add_option("--kappa", val_opts.kappa);
  validate->add_flag("--break-lift", val_opts.break_lift);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_opts);
    if (experiment->parsed()) return cmd_experiment(exp_opts);
    if (validate->parsed()) return cmd_validate(val_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInputError;
}
