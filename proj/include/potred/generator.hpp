#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "potred/lp.hpp"

namespace potred {

struct StartPoint {
  Vector x, y, z;
};

struct GeneratedInstance {
  LinearProgram lp;
  std::optional<StartPoint> strict_start;
  std::optional<StartPoint> known_optimum;
  double optimum_inf_norm = 0.0;  // max(|x*|_inf, |z*|_inf) when present
  std::uint64_t seed = 0;
};

// Deterministic pseudorandom scheme: mt19937_64 with 53-bit uniforms
// ((next() >> 11) * 2^-53), so instances are bit-identical per seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) {
    double u = static_cast<double>(gen_() >> 11) * 0x1p-53;
    return lo + (hi - lo) * u;
  }
  std::uint64_t next() { return gen_(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 gen_;
};

// Strictly feasible instance: x0, z0 drawn in [0.5, 2], y0 in [-1, 1],
// then b := A x0 and c := A^T y0 + z0.
GeneratedInstance generate_feasible_instance(std::uint64_t seed, int m, int n,
                                             double density);

// Instance with a known optimum of disjoint supports: |B| = m,
// x*_B in [1, rho_target/2], z*_N in [1, rho_target/2], the B-columns of A
// forming a nonsingular block; b := A x*, c := A^T y* + z*.
GeneratedInstance generate_bounded_optimal_instance(std::uint64_t seed, int m,
                                                    int n, double rho_target);

}  // namespace potred
