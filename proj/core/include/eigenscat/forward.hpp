#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eigenscat/lippmann_schwinger.hpp"
#include "eigenscat/media.hpp"
#include "eigenscat/types.hpp"

namespace eigenscat::forward {

/// Equispaced directions theta_j = 2 pi j / count on the unit circle.
class DirectionSet {
 public:
  /// Throws InputError when count < 8.
  explicit DirectionSet(int count);

  int count() const noexcept { return count_; }
  double angle(int j) const { return 2.0 * pi * j / count_; }
  Point direction(int j) const;
  /// Trapezoid weight 2 pi / count.
  double weight() const { return 2.0 * pi / count_; }

  friend bool operator==(const DirectionSet&, const DirectionSet&) = default;

 private:
  int count_;
};

/// Fourier-Bessel solution for a homogeneous disk hit by a plane wave.
class DiskSeries {
 public:
  /// Throws ResolutionError if the series tail cannot be pushed below 1e-12
  /// within the supported Bessel orders.
  DiskSeries(const media::Disk& disk, double k);

  int truncation() const noexcept { return truncation_; }

  /// Scattering coefficient a'_m for incidence along +x (a_m = a'_m e^{-i m theta_d}).
  cplx scattering_coefficient(int m) const;
  /// Interior coefficient c'_m for incidence along +x.
  cplx interior_coefficient(int m) const;

  cplx farfield(Point xhat, Point d) const;
  CMatrix farfield_matrix(const DirectionSet& obs, const DirectionSet& inc) const;
  /// Total field u = u^i + u^s at z.
  cplx total_field(Point z, Point d) const;

 private:
  media::Disk disk_;
  double k_;
  int truncation_ = 0;
  std::vector<cplx> scat_;      // a'_m, m = -M..M
  std::vector<cplx> interior_;  // c'_m, m = -M..M
};

/// Far field of a centred disk (radius, n) at wavenumber k.
cplx disk_farfield(double radius, double n, double k, Point xhat, Point d);

enum class SolverKind { automatic, series, lippmann_schwinger };

struct SynthesisOptions {
  SolverKind solver = SolverKind::automatic;
  LsOptions ls;
};

struct FarFieldDataset {
  std::vector<double> wavenumbers;
  DirectionSet obs{8};
  DirectionSet inc{8};
  /// A_k[i][j] = u_inf(xhat_i, d_j; k); empty when the solve failed or the
  /// file was missing.
  std::vector<std::optional<CMatrix>> matrices;
  /// Per-k failure or warning text; empty string when the matrix is present.
  std::vector<std::string> status;
  double noise_level = 0.0;
  std::uint64_t seed = 0;
  std::string scene;
  std::string config_hash;

  std::size_t size() const { return wavenumbers.size(); }
  /// Index of the available wavenumber closest to k.
  std::optional<std::size_t> nearest_available(double k) const;
};

/// A + level * ||A||_F * R / ||R||_F with R i.i.d. standard complex Gaussian
/// drawn from (seed, stream).
CMatrix add_noise(const CMatrix& a, double level, std::uint64_t seed, std::uint64_t stream);

FarFieldDataset synthesize(const media::MediumScene& scene, const std::vector<double>& wavenumbers,
                           const DirectionSet& obs, const DirectionSet& inc, double noise_level,
                           std::uint64_t seed, const SynthesisOptions& opts = {});

}  // namespace eigenscat::forward
