#include "eigenscat/forward.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "eigenscat/errors.hpp"
#include "eigenscat/specfun.hpp"

namespace eigenscat::forward {

DirectionSet::DirectionSet(int count) : count_(count) {
  if (count < 8) throw InputError("directions: count must be at least 8, got " + std::to_string(count));
}

Point DirectionSet::direction(int j) const {
  const double t = angle(j);
  return {std::cos(t), std::sin(t)};
}

namespace {

cplx i_pow(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

constexpr double kTailBound = 1e-12;

}  // namespace

DiskSeries::DiskSeries(const media::Disk& disk, double k) : disk_(disk), k_(k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw InputError("disk series: wavenumber must be positive");
  if (!(disk.radius > 0.0)) throw InputError("disk series: radius must be positive");
  if (!(disk.index > 0.0)) throw InputError("disk series: index must be positive");

  const double kr = k * disk.radius;
  const double kappa = std::sqrt(disk.index) * k;
  const double qr = kappa * disk.radius;
  const int limit = specfun::max_cylindrical_order - 1;

  std::vector<cplx> a;
  std::vector<cplx> c;
  double largest = 0.0;
  int quiet = 0;
  int m = 0;
  for (; m <= limit; ++m) {
    const double jk = specfun::bessel_j(m, kr);
    const double djk = specfun::bessel_j_prime(m, kr);
    const double jq = specfun::bessel_j(m, qr);
    const double djq = specfun::bessel_j_prime(m, qr);
    const cplx hk = specfun::bessel_h1(m, kr);
    const cplx dhk = specfun::bessel_h1_prime(m, kr);
    const cplx den = kappa * hk * djq - k * dhk * jq;
    cplx am = i_pow(m) * (k * djk * jq - kappa * jk * djq) / den;
    if (!std::isfinite(am.real()) || !std::isfinite(am.imag())) am = 0.0;
    const cplx cm = (std::abs(jq) > 0.0) ? (i_pow(m) * jk + am * hk) / jq : cplx{0.0};
    a.push_back(am);
    c.push_back(std::isfinite(std::abs(cm)) ? cm : cplx{0.0});
    largest = std::max(largest, std::abs(am));
    if (m > kr && std::abs(am) < kTailBound * 1e-2 * std::max(1.0, largest)) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  if (m > limit) throw ResolutionError("disk series: tail bound not reached within supported orders");
  truncation_ = m;

  // Against signed-order Bessel functions, a'_{-m} = (-1)^m a'_m and likewise c'.
  const int count = 2 * truncation_ + 1;
  scat_.resize(static_cast<std::size_t>(count));
  interior_.resize(static_cast<std::size_t>(count));
  for (int q = -truncation_; q <= truncation_; ++q) {
    const double sign = (q < 0 && (q & 1)) ? -1.0 : 1.0;
    scat_[static_cast<std::size_t>(q + truncation_)] = sign * a[static_cast<std::size_t>(std::abs(q))];
    interior_[static_cast<std::size_t>(q + truncation_)] = sign * c[static_cast<std::size_t>(std::abs(q))];
  }
}

cplx DiskSeries::scattering_coefficient(int m) const {
  if (std::abs(m) > truncation_) return 0.0;
  return scat_[static_cast<std::size_t>(m + truncation_)];
}

cplx DiskSeries::interior_coefficient(int m) const {
  if (std::abs(m) > truncation_) return 0.0;
  return interior_[static_cast<std::size_t>(m + truncation_)];
}

cplx DiskSeries::farfield(Point xhat, Point d) const {
  const double tx = std::atan2(xhat.y, xhat.x);
  const double td = std::atan2(d.y, d.x);
  const double gap = tx - td;
  cplx sum = 0.0;
  for (int m = -truncation_; m <= truncation_; ++m) {
    sum += scattering_coefficient(m) * i_pow(-m) * std::polar(1.0, m * gap);
  }
  const cplx prefactor = std::sqrt(2.0 / (pi * k_)) * std::polar(1.0, -pi / 4.0);
  const cplx shift = std::exp(I * (k_ * dot(d - xhat, disk_.center)));
  return prefactor * shift * sum;
}

CMatrix DiskSeries::farfield_matrix(const DirectionSet& obs, const DirectionSet& inc) const {
  CMatrix out(obs.count(), inc.count());
  for (int j = 0; j < inc.count(); ++j) {
    for (int i = 0; i < obs.count(); ++i) out(i, j) = farfield(obs.direction(i), inc.direction(j));
  }
  return out;
}

cplx DiskSeries::total_field(Point z, Point d) const {
  const Point rel = z - disk_.center;
  const double r = norm(rel);
  const double phase = std::atan2(rel.y, rel.x) - std::atan2(d.y, d.x);
  const cplx shift = std::exp(I * (k_ * dot(d, disk_.center)));
  cplx sum = 0.0;
  if (r <= disk_.radius) {
    const double qr = std::sqrt(disk_.index) * k_ * r;
    for (int m = -truncation_; m <= truncation_; ++m) {
      sum += interior_coefficient(m) * specfun::bessel_j(m, qr) * std::polar(1.0, m * phase);
    }
    return shift * sum;
  }
  for (int m = -truncation_; m <= truncation_; ++m) {
    sum += scattering_coefficient(m) * specfun::bessel_h1(m, k_ * r) * std::polar(1.0, m * phase);
  }
  return std::exp(I * (k_ * dot(d, z))) + shift * sum;
}

cplx disk_farfield(double radius, double n, double k, Point xhat, Point d) {
  if (n == 1.0) return 0.0;
  return DiskSeries(media::Disk{{0.0, 0.0}, radius, n}, k).farfield(xhat, d);
}

std::optional<std::size_t> FarFieldDataset::nearest_available(double k) const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < wavenumbers.size(); ++i) {
    if (!matrices[i]) continue;
    if (!best || std::abs(wavenumbers[i] - k) < std::abs(wavenumbers[*best] - k)) best = i;
  }
  return best;
}

CMatrix add_noise(const CMatrix& a, double level, std::uint64_t seed, std::uint64_t stream) {
  if (!(level >= 0.0 && level < 1.0)) throw InputError("noise: level must lie in [0, 1)");
  if (level == 0.0) return a;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix r(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      r(i, j) = {re, im};
    }
  }
  return a + (level * a.norm() / r.norm()) * r;
}

FarFieldDataset synthesize(const media::MediumScene& scene, const std::vector<double>& wavenumbers,
                           const DirectionSet& obs, const DirectionSet& inc, double noise_level,
                           std::uint64_t seed, const SynthesisOptions& opts) {
  if (!(noise_level >= 0.0 && noise_level < 1.0)) throw InputError("synthesize: noise level must lie in [0, 1)");
  if (wavenumbers.empty()) throw InputError("synthesize: no wavenumbers");
  for (std::size_t i = 0; i < wavenumbers.size(); ++i) {
    if (!(wavenumbers[i] > 0.0) || !std::isfinite(wavenumbers[i])) {
      throw InputError("synthesize: wavenumbers must be positive");
    }
    if (i > 0 && !(wavenumbers[i] > wavenumbers[i - 1])) {
      throw InputError("synthesize: wavenumbers must be strictly increasing");
    }
  }
  const auto disk = scene.as_disk();
  if (opts.solver == SolverKind::series && !disk) {
    throw InputError("synthesize: series solver requires a homogeneous disk");
  }
  const bool use_series = disk && opts.solver != SolverKind::lippmann_schwinger;

  FarFieldDataset data;
  data.wavenumbers = wavenumbers;
  data.obs = obs;
  data.inc = inc;
  data.noise_level = noise_level;
  data.seed = seed;
  data.scene = scene.describe();
  data.matrices.resize(wavenumbers.size());
  data.status.resize(wavenumbers.size());

  for (std::size_t i = 0; i < wavenumbers.size(); ++i) {
    const double k = wavenumbers[i];
    try {
      CMatrix a = use_series ? DiskSeries(*disk, k).farfield_matrix(obs, inc)
                             : ls_farfield_matrix(scene, k, obs, inc, opts.ls);
      if (!a.allFinite()) throw NumericalError("non-finite far field");
      data.matrices[i] = add_noise(a, noise_level, seed, i);
    } catch (const std::exception& e) {
      data.status[i] = e.what();
    }
  }
  return data;
}

}  // namespace eigenscat::forward
