#pragma once

#include <string>
#include <vector>

#include "eigenscat/forward.hpp"
#include "eigenscat/herglotz.hpp"
#include "eigenscat/types.hpp"

namespace eigenscat::modes {

enum class Method { ftls, gtls };

struct ModeRecoveryConfig {
  Method method = Method::ftls;
  /// Fourier truncation N_t (FTLS).
  int truncation = 6;
  /// Gradient penalty weight beta (GTLS), relative to ||F||^2.
  double beta = 1e-4;
  herglotz::NormBall ball;
  /// Data-relative floor tau: adds tau^2 ||F||^2 ||g||^2 to the objective.
  /// Zero gives the unmodified Rayleigh quotient.
  double noise_floor = 1e-2;

  /// Throws InputError on N_t < 1, beta <= 0, tau < 0 or a non-positive radius.
  void validate() const;
};

struct RecoveredMode {
  double k = 0.0;
  herglotz::HerglotzKernel kernel;
  /// ||F g||_{L^2(S^1)}.
  double residual = 0.0;
  /// g^* B g.
  double constraint_value = 0.0;
  /// Generalised eigenvalue of the discrete problem.
  double eigenvalue = 0.0;
  std::string warning;
};

/// Pencil (Q, C) whose smallest generalised eigenpair gives the mode, together
/// with the map from pencil coordinates to kernel samples.
struct ModeSystem {
  CMatrix quadratic;   // Q
  CMatrix constraint;  // C
  CMatrix basis;       // samples = basis * coordinates
};

/// F = A diag(w_inc). FTLS: Q = Psi^*(w F^*F + tau^2 s^2 w I)Psi, C = Psi^* B Psi.
/// GTLS: Q = w F^*F + beta s^2 D + tau^2 s^2 w I, C = B, with D the discrete
/// ||d g / d theta||^2 form and s = ||F||_2.
ModeSystem build_system(const CMatrix& a, double k, const forward::DirectionSet& obs,
                        const forward::DirectionSet& inc, const ModeRecoveryConfig& cfg);

/// Smallest generalised eigenpair(s) of the mode problem for one far-field
/// matrix. Returns two modes when the two smallest eigenvalues agree to 1e-6
/// relative. Throws NumericalError if the eigensolve fails.
std::vector<RecoveredMode> recover_from_matrix(const CMatrix& a, double k, const forward::DirectionSet& obs,
                                               const forward::DirectionSet& inc, const ModeRecoveryConfig& cfg);

/// Uses the dataset sample nearest to k. Throws InputError when no matrix is available.
std::vector<RecoveredMode> recover_modes(const forward::FarFieldDataset& data, double k,
                                         const ModeRecoveryConfig& cfg);

}  // namespace eigenscat::modes
