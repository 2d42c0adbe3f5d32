#pragma once

#include <functional>

#include "eigenscat/types.hpp"

namespace eigenscat {

struct GmresOptions {
  double tolerance = 1e-8;  // on ||b - Ax|| / ||b||
  int restart = 100;
  int max_iterations = 2000;
};

struct GmresResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

using LinearOperator = std::function<void(const CVector& in, CVector& out)>;

/// Restarted GMRES with classical Gram-Schmidt (reorthogonalised when needed)
/// and Givens rotations.
/// `x` holds the initial guess on entry and the iterate on exit.
GmresResult gmres(const LinearOperator& apply, const CVector& b, CVector& x, const GmresOptions& opts);

}  // namespace eigenscat
