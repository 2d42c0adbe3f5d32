#include "eigenscat/modes.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "eigenscat/errors.hpp"
#include "eigenscat/format.hpp"

namespace eigenscat::modes {
namespace {

constexpr double kDegenerateRelative = 1e-6;
constexpr double kMultiplicityGap = 1e-12;

double spectral_norm(const CMatrix& f) {
  if (f.size() == 0) return 0.0;
  return Eigen::JacobiSVD<CMatrix>(f).singularValues()(0);
}

// (2 pi / count^2) Psi diag(m^2) Psi^* over the full band of the sample grid.
CMatrix derivative_form(const forward::DirectionSet& dirs) {
  const int n = dirs.count();
  const int half = n / 2;
  CMatrix psi(n, n);
  RVector m2(n);
  for (int c = 0; c < n; ++c) {
    const int m = c - half + ((n % 2 == 0) ? 1 : 0);
    m2(c) = static_cast<double>(m) * m;
    for (int j = 0; j < n; ++j) psi(j, c) = std::polar(1.0, m * dirs.angle(j));
  }
  return (2.0 * pi / (static_cast<double>(n) * n)) * psi * m2.cast<cplx>().asDiagonal() * psi.adjoint();
}

void fix_phase(CVector& g) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < g.size(); ++i) {
    if (std::abs(g(i)) > std::abs(g(best)) * (1.0 + 1e-12)) best = i;
  }
  const double mag = std::abs(g(best));
  if (mag > 0.0) g *= std::conj(g(best)) / mag;
}

RecoveredMode finish(const CVector& coords, const ModeSystem& sys, const CMatrix& f, double k,
                     const forward::DirectionSet& obs, const forward::DirectionSet& inc, const CMatrix& gram,
                     double eigenvalue) {
  CVector g = sys.basis * coords;
  const double scale = std::sqrt(std::max((g.adjoint() * gram * g)(0).real(), 0.0));
  if (!(scale > 0.0)) throw NumericalError("modes: kernel has zero norm");
  g /= scale;
  fix_phase(g);
  RecoveredMode mode{k, herglotz::HerglotzKernel(k, inc, g), 0.0, 0.0, eigenvalue, {}};
  mode.residual = std::sqrt(obs.weight()) * (f * g).norm();
  mode.constraint_value = (g.adjoint() * gram * g)(0).real();
  return mode;
}

}  // namespace

void ModeRecoveryConfig::validate() const {
  if (method == Method::ftls && truncation < 1) throw InputError("modes: truncation must be at least 1");
  if (method == Method::gtls && !(beta > 0.0)) throw InputError("modes: beta must be positive");
  if (!(noise_floor >= 0.0) || !std::isfinite(noise_floor)) throw InputError("modes: noise floor must be >= 0");
  if (!(ball.radius > 0.0)) throw InputError("modes: ball radius must be positive");
}

ModeSystem build_system(const CMatrix& a, double k, const forward::DirectionSet& obs,
                        const forward::DirectionSet& inc, const ModeRecoveryConfig& cfg) {
  cfg.validate();
  if (a.rows() != obs.count() || a.cols() != inc.count()) throw InputError("modes: matrix shape mismatch");
  const CMatrix f = a * inc.weight();
  const double s = spectral_norm(f);
  const double w = obs.weight();
  const int n = inc.count();
  CMatrix normal = w * (f.adjoint() * f);
  normal.diagonal().array() += cfg.noise_floor * cfg.noise_floor * s * s * w;
  const CMatrix gram = herglotz::gram_h1(k, inc, cfg.ball);

  ModeSystem sys;
  if (cfg.method == Method::ftls) {
    if (2 * cfg.truncation + 1 > n) throw InputError("modes: truncation too large for the direction count");
    sys.basis = herglotz::fourier_basis(inc, cfg.truncation);
    sys.quadratic = sys.basis.adjoint() * normal * sys.basis;
    sys.constraint = sys.basis.adjoint() * gram * sys.basis;
  } else {
    sys.basis = CMatrix::Identity(n, n);
    sys.quadratic = normal + cfg.beta * s * s * derivative_form(inc);
    sys.constraint = gram;
  }
  // Restore exact Hermitian symmetry lost to rounding.
  sys.quadratic = 0.5 * (sys.quadratic + sys.quadratic.adjoint()).eval();
  sys.constraint = 0.5 * (sys.constraint + sys.constraint.adjoint()).eval();
  return sys;
}

std::vector<RecoveredMode> recover_from_matrix(const CMatrix& a, double k, const forward::DirectionSet& obs,
                                               const forward::DirectionSet& inc, const ModeRecoveryConfig& cfg) {
  if (!a.allFinite()) throw InputError("modes: non-finite far-field matrix");
  const ModeSystem sys = build_system(a, k, obs, inc, cfg);
  const CMatrix f = a * inc.weight();
  const CMatrix gram = herglotz::gram_h1(k, inc, cfg.ball);
  const Eigen::Index dim = sys.quadratic.rows();

  if (sys.quadratic.norm() == 0.0) {
    // Every normalised kernel is optimal; pick the basis vector of least B-norm.
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < dim; ++i) {
      if (sys.constraint(i, i).real() < sys.constraint(best, best).real()) best = i;
    }
    return {finish(CVector::Unit(dim, best), sys, f, k, obs, inc, gram, 0.0)};
  }

  std::vector<double> lambdas;
  std::vector<CVector> vectors;
  if (cfg.method == Method::ftls) {
    Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> es(sys.quadratic, sys.constraint);
    if (es.info() != Eigen::Success) throw NumericalError("modes: generalised eigensolve failed");
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(2, dim); ++i) {
      lambdas.push_back(es.eigenvalues()(i));
      vectors.push_back(es.eigenvectors().col(i));
    }
  } else {
    // B is numerically singular for dense direction sets; solve B x = mu Q x
    // instead and take the largest mu.
    Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> es(sys.constraint, sys.quadratic);
    if (es.info() != Eigen::Success) throw NumericalError("modes: generalised eigensolve failed");
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(2, dim); ++i) {
      const Eigen::Index c = dim - 1 - i;
      const double mu = es.eigenvalues()(c);
      if (!(mu > 0.0)) throw NumericalError("modes: constraint form is not positive");
      lambdas.push_back(1.0 / mu);
      vectors.push_back(es.eigenvectors().col(c));
    }
  }

  std::vector<RecoveredMode> out;
  out.push_back(finish(vectors[0], sys, f, k, obs, inc, gram, lambdas[0]));
  if (lambdas.size() > 1) {
    const double gap = lambdas[1] - lambdas[0];
    const double scale = std::max(std::abs(lambdas[0]), std::abs(lambdas[1]));
    if (gap <= kDegenerateRelative * scale) {
      RecoveredMode second = finish(vectors[1], sys, f, k, obs, inc, gram, lambdas[1]);
      if (gap < kMultiplicityGap * std::max(scale, sys.quadratic.norm())) {
        out[0].warning = "multiplicity: two smallest eigenvalues differ by " + format_double(gap);
        second.warning = out[0].warning;
      }
      out.push_back(std::move(second));
    }
  }
  return out;
}

std::vector<RecoveredMode> recover_modes(const forward::FarFieldDataset& data, double k,
                                         const ModeRecoveryConfig& cfg) {
  const auto idx = data.nearest_available(k);
  if (!idx) throw InputError("modes: dataset has no far-field matrix");
  return recover_from_matrix(*data.matrices[*idx], data.wavenumbers[*idx], data.obs, data.inc, cfg);
}

}  // namespace eigenscat::modes
