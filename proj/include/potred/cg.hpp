#pragma once

#include <functional>

#include "potred/vec.hpp"

namespace potred {

using LinearOp = std::function<Vector(const Vector&)>;

struct CgOutcome {
  Vector solution;
  Vector residual;  // rhs - apply(solution), recomputed at return
  int iterations = 0;
  enum class Stop { accepted, max_iterations, breakdown } stop =
      Stop::max_iterations;
};

using CgAccept = std::function<bool(const CgOutcome&)>;

// Preconditioned conjugate gradients on an SPD operator. The accept
// predicate is evaluated on the initial guess (zero) and after every
// iteration; the first acceptance stops the iteration. The recursively
// updated residual is replaced by an explicit recomputation every 50
// iterations and before returning.
CgOutcome conjugate_gradients(const LinearOp& apply, const Vector& rhs,
                              const LinearOp& precond, const CgAccept& accept,
                              int max_iters);

}  // namespace potred
