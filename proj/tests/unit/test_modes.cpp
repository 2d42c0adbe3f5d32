#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <vector>

#include "eigenscat/errors.hpp"
#include "eigenscat/forward.hpp"
#include "eigenscat/herglotz.hpp"
#include "eigenscat/modes.hpp"
#include "eigenscat/oracle.hpp"
#include "eigenscat/specfun.hpp"

using namespace eigenscat;
using forward::DirectionSet;
using modes::Method;
using modes::ModeRecoveryConfig;

namespace {

CMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a(i, j) = cplx(g(rng), g(rng));
  }
  return a;
}

void fix_phase(CVector& g) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < g.size(); ++i) {
    if (std::abs(g(i)) > std::abs(g(best)) * (1.0 + 1e-12)) best = i;
  }
  g *= std::conj(g(best)) / std::abs(g(best));
}

// Interior L^2 correlation of the recovered |v| (root sum of squares over a
// degenerate pair) against |J_m(k r)| on the unit disk.
double disk_correlation(const std::vector<modes::RecoveredMode>& modes, double k, int m) {
  double vv = 0.0;
  double jj = 0.0;
  double vj = 0.0;
  const int nr = 60;
  const int na = 96;
  for (int ir = 0; ir < nr; ++ir) {
    const double r = (ir + 0.5) / nr;
    const double jm = std::abs(specfun::bessel_j(m, k * r));
    for (int ia = 0; ia < na; ++ia) {
      const double t = 2.0 * pi * ia / na;
      double v2 = 0.0;
      for (const auto& mode : modes) v2 += std::norm(herglotz::eval_wave(mode.kernel, {r * std::cos(t), r * std::sin(t)}));
      const double v = std::sqrt(v2);
      vv += v * v * r;
      jj += jm * jm * r;
      vj += v * jm * r;
    }
  }
  return vj / std::sqrt(vv * jj);
}

}  // namespace

TEST(Modes, ConfigValidation) {
  ModeRecoveryConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.truncation = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.method = Method::gtls;
  cfg.beta = 0.0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.ball.radius = -1.0;
  EXPECT_THROW(cfg.validate(), InputError);
  const DirectionSet d(10);
  cfg = {};
  cfg.truncation = 5;
  EXPECT_THROW(modes::build_system(CMatrix::Zero(10, 10), 1.0, d, d, cfg), InputError);
}

TEST(Modes, ZeroDataReturnsNormalisedKernel) {
  const DirectionSet d(16);
  ModeRecoveryConfig cfg;
  cfg.truncation = 3;
  const auto out = modes::recover_from_matrix(CMatrix::Zero(16, 16), 1.0, d, d, cfg);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].residual, 0.0);
  EXPECT_NEAR(out[0].constraint_value, 1.0, 1e-10);
}

TEST(Modes, FtlsMatchesDenseEigendecomposition) {
  std::mt19937_64 rng(21);
  for (int count : {8, 10, 12}) {
    const DirectionSet d(count);
    const CMatrix a = random_matrix(count, count, rng);
    ModeRecoveryConfig cfg;
    cfg.truncation = (count - 1) / 2;
    cfg.noise_floor = 0.0;
    const double k = 1.3;
    const auto out = modes::recover_from_matrix(a, k, d, d, cfg);
    const auto sys = modes::build_system(a, k, d, d, cfg);
    // All eigenpairs of C^{-1} Q, smallest real part taken.
    Eigen::ComplexEigenSolver<CMatrix> es(sys.constraint.partialPivLu().solve(sys.quadratic));
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i) {
      if (es.eigenvalues()(i).real() < es.eigenvalues()(best).real()) best = i;
    }
    CVector g = sys.basis * es.eigenvectors().col(best);
    const CMatrix b = herglotz::gram_h1(k, d, cfg.ball);
    g /= std::sqrt((g.adjoint() * b * g)(0).real());
    fix_phase(g);
    EXPECT_LT((out[0].kernel.samples() - g).norm() / g.norm(), 1e-8) << "count=" << count;
    EXPECT_NEAR(out[0].eigenvalue, es.eigenvalues()(best).real(), 1e-8 * std::abs(es.eigenvalues()(best)));
  }
}

TEST(Modes, EigenResidualAndConstraint) {
  std::mt19937_64 rng(2);
  const DirectionSet d(24);
  const CMatrix a = random_matrix(24, 24, rng);
  ModeRecoveryConfig cfg;
  const auto sys = modes::build_system(a, 1.1, d, d, cfg);
  const auto out = modes::recover_from_matrix(a, 1.1, d, d, cfg);
  const CVector coords = herglotz::HerglotzKernel(1.1, d, out[0].kernel.samples()).fourier_coefficients(cfg.truncation);
  const CVector r = sys.quadratic * coords - out[0].eigenvalue * sys.constraint * coords;
  EXPECT_LE(r.norm(), 1e-8 * sys.quadratic.norm() * coords.norm());
  EXPECT_NEAR(out[0].constraint_value, 1.0, 1e-10);
  EXPECT_GE(out[0].residual, 0.0);
}

TEST(Modes, OptimalOverRandomNormalisedKernels) {
  std::mt19937_64 rng(6);
  const DirectionSet d(20);
  const double k = 1.4;
  const CMatrix a = random_matrix(20, 20, rng);
  ModeRecoveryConfig cfg;
  cfg.noise_floor = 0.0;
  const auto out = modes::recover_from_matrix(a, k, d, d, cfg);
  const CMatrix psi = herglotz::fourier_basis(d, cfg.truncation);
  const CMatrix b = herglotz::gram_h1(k, d, cfg.ball);
  const CMatrix f = a * d.weight();
  for (int t = 0; t < 50; ++t) {
    CVector h = psi * CVector(random_matrix(psi.cols(), 1, rng));
    h /= std::sqrt((h.adjoint() * b * h)(0).real());
    EXPECT_LE(out[0].residual, std::sqrt(d.weight()) * (f * h).norm() * (1.0 + 1e-12));
  }
}

TEST(Modes, ScalingInvariance) {
  std::mt19937_64 rng(13);
  const DirectionSet d(16);
  const CMatrix a = random_matrix(16, 16, rng);
  for (Method m : {Method::ftls, Method::gtls}) {
    ModeRecoveryConfig cfg;
    cfg.method = m;
    const auto x = modes::recover_from_matrix(a, 1.0, d, d, cfg);
    const auto y = modes::recover_from_matrix(10.0 * a, 1.0, d, d, cfg);
    EXPECT_LT((x[0].kernel.samples() - y[0].kernel.samples()).norm(), 1e-8 * x[0].kernel.samples().norm());
    EXPECT_NEAR(y[0].residual, 10.0 * x[0].residual, 1e-8 * y[0].residual);
  }
}

TEST(Modes, GtlsNormalisedAndMinimal) {
  std::mt19937_64 rng(31);
  const DirectionSet d(16);
  const CMatrix a = random_matrix(16, 16, rng);
  ModeRecoveryConfig cfg;
  cfg.method = Method::gtls;
  const auto sys = modes::build_system(a, 1.2, d, d, cfg);
  const auto out = modes::recover_from_matrix(a, 1.2, d, d, cfg);
  const CVector& g = out[0].kernel.samples();
  EXPECT_NEAR(out[0].constraint_value, 1.0, 1e-10);
  const double rayleigh = (g.adjoint() * sys.quadratic * g)(0).real();
  EXPECT_NEAR(rayleigh, out[0].eigenvalue, 1e-8 * std::abs(out[0].eigenvalue));
  for (int t = 0; t < 50; ++t) {
    CVector h = random_matrix(16, 1, rng);
    h /= std::sqrt((h.adjoint() * sys.constraint * h)(0).real());
    EXPECT_GE((h.adjoint() * sys.quadratic * h)(0).real(), rayleigh * (1.0 - 1e-10));
  }
}

TEST(Modes, DegeneratePairReturnsTwoModes) {
  // Rotation-invariant data: the m = +1 and m = -1 Fourier modes share an eigenvalue.
  const forward::DiskSeries s(media::Disk{{0, 0}, 1.0, 16.0}, 1.8);
  const DirectionSet d(32);
  ModeRecoveryConfig cfg;
  cfg.noise_floor = 0.0;
  const auto out = modes::recover_from_matrix(s.farfield_matrix(d, d), 1.8, d, d, cfg);
  const auto sys = modes::build_system(s.farfield_matrix(d, d), 1.8, d, d, cfg);
  Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> es(sys.quadratic, sys.constraint);
  const double l0 = es.eigenvalues()(0);
  const double l1 = es.eigenvalues()(1);
  EXPECT_EQ(out.size(), (l1 - l0 <= 1e-6 * std::abs(l1)) ? 2u : 1u);
}

TEST(Modes, DiskModeCorrelatesWithEigenfunction) {
  const auto roots = oracle::disk_tev(1.0, 16.0, 0.5, 3.0, 10);
  ASSERT_FALSE(roots.empty());
  const double k = roots.front().k;
  const int m = roots.front().index;
  const DirectionSet d(64);
  const CMatrix a = forward::DiskSeries(media::Disk{{0, 0}, 1.0, 16.0}, k).farfield_matrix(d, d);
  ModeRecoveryConfig cfg;
  cfg.truncation = 6;
  const auto clean = modes::recover_from_matrix(a, k, d, d, cfg);
  EXPECT_GE(disk_correlation(clean, k, m), 0.9);
  const auto noisy = modes::recover_from_matrix(forward::add_noise(a, 0.05, 3, 0), k, d, d, cfg);
  EXPECT_GE(disk_correlation(noisy, k, m), 0.8);
}

TEST(Modes, RecoverFromDatasetUsesNearestSample) {
  const media::MediumScene disk(media::Disk{{0, 0}, 1.0, 16.0});
  const DirectionSet d(16);
  auto data = forward::synthesize(disk, {1.0, 1.2}, d, d, 0.0, 1);
  ModeRecoveryConfig cfg;
  cfg.truncation = 4;
  EXPECT_EQ(modes::recover_modes(data, 1.15, cfg)[0].k, 1.2);
  data.matrices[0].reset();
  data.matrices[1].reset();
  EXPECT_THROW(modes::recover_modes(data, 1.0, cfg), InputError);
}
