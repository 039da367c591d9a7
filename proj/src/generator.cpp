#include "potred/generator.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "potred/basis.hpp"
#include "potred/errors.hpp"

namespace potred {

namespace {

constexpr int kRetryCap = 50;

double nonzero_value(Rng& rng) {
  double mag = rng.uniform(0.2, 1.2);
  return rng.uniform(0.0, 1.0) < 0.5 ? mag : -mag;
}

SparseMatrix draw_sparse(Rng& rng, int m, int n, double density) {
  std::vector<Triplet> triplets;
  std::vector<int> row_count(m, 0);
  std::vector<std::vector<char>> used(m, std::vector<char>(n, 0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i)
      if (rng.uniform(0.0, 1.0) < density) {
        triplets.push_back({i, j, nonzero_value(rng)});
        row_count[i]++;
        used[i][j] = 1;
      }
  // no empty rows
  for (int i = 0; i < m; ++i)
    while (row_count[i] == 0) {
      int j = rng.uniform_int(0, n - 1);
      if (used[i][j]) continue;
      triplets.push_back({i, j, nonzero_value(rng)});
      used[i][j] = 1;
      row_count[i]++;
    }
  return SparseMatrix::from_triplets(m, n, std::move(triplets));
}

}  // namespace

GeneratedInstance generate_feasible_instance(std::uint64_t seed, int m, int n,
                                             double density) {
  if (m < 1 || m >= n) throw ParamError("require 1 <= m < n");
  if (!(density > 0.0 && density <= 1.0))
    throw ParamError("density must be in (0, 1]");

  Rng rng(seed);
  SparseMatrix A;
  bool ok = false;
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    A = draw_sparse(rng, m, n, density);
    if (validate_rank(A).full_rank) {
      ok = true;
      break;
    }
  }
  if (!ok) throw GenerationError("rank resampling cap exceeded");

  StartPoint start;
  start.x.resize(n);
  start.z.resize(n);
  start.y.resize(m);
  for (int j = 0; j < n; ++j) start.x[j] = rng.uniform(0.5, 2.0);
  for (int j = 0; j < n; ++j) start.z[j] = rng.uniform(0.5, 2.0);
  for (int i = 0; i < m; ++i) start.y[i] = rng.uniform(-1.0, 1.0);

  GeneratedInstance inst;
  inst.lp.b = A.matvec(start.x);
  inst.lp.c = add(A.matvec_transpose(start.y), start.z);
  inst.lp.A = std::move(A);
  inst.lp.name = "feas_s" + std::to_string(seed) + "_m" + std::to_string(m) +
                 "_n" + std::to_string(n);
  inst.strict_start = std::move(start);
  inst.seed = seed;
  return inst;
}

GeneratedInstance generate_bounded_optimal_instance(std::uint64_t seed, int m,
                                                    int n, double rho_target) {
  if (m < 1 || m >= n) throw ParamError("require 1 <= m < n");
  if (!(rho_target > 1.0)) throw ParamError("rho_target must be > 1");

  Rng rng(seed);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.uniform_int(0, i)]);
  std::vector<int> basic(perm.begin(), perm.begin() + m);

  SparseMatrix A;
  bool ok = false;
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    std::vector<Triplet> triplets;
    std::vector<std::vector<char>> used(m, std::vector<char>(n, 0));
    // dominant diagonal inside the basic block, pairing row i with basic[i]
    for (int i = 0; i < m; ++i) {
      triplets.push_back({i, basic[i], rng.uniform(1.0, 2.0)});
      used[i][basic[i]] = 1;
    }
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < m; ++i)
        if (!used[i][j] && rng.uniform(0.0, 1.0) < 0.4)
          triplets.push_back({i, j, nonzero_value(rng)});
    A = SparseMatrix::from_triplets(m, n, std::move(triplets));
    try {
      BasisFactorization fac(A, basic, 1e-8);
      ok = true;
      break;
    } catch (const RankError&) {
    }
  }
  if (!ok) throw GenerationError("nonsingular-block resampling cap exceeded");

  std::vector<char> in_basis(n, 0);
  for (int j : basic) in_basis[j] = 1;
  StartPoint opt;
  opt.x.assign(n, 0.0);
  opt.z.assign(n, 0.0);
  opt.y.resize(m);
  for (int j = 0; j < n; ++j)
    if (in_basis[j])
      opt.x[j] = rng.uniform(1.0, rho_target / 2.0);
    else
      opt.z[j] = rng.uniform(1.0, rho_target / 2.0);
  for (int i = 0; i < m; ++i) opt.y[i] = rng.uniform(-1.0, 1.0);

  GeneratedInstance inst;
  inst.lp.b = A.matvec(opt.x);
  inst.lp.c = add(A.matvec_transpose(opt.y), opt.z);
  inst.lp.A = std::move(A);
  inst.lp.name = "opt_s" + std::to_string(seed) + "_m" + std::to_string(m) +
                 "_n" + std::to_string(n);
  inst.optimum_inf_norm = std::max(norm_inf(opt.x), norm_inf(opt.z));
  inst.known_optimum = std::move(opt);
  inst.seed = seed;
  return inst;
}

}  // namespace potred
