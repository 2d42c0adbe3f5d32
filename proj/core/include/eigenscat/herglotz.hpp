#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "eigenscat/forward.hpp"
#include "eigenscat/types.hpp"

namespace eigenscat::herglotz {

/// Ball Omega = {|z - center| < radius} on which the H^1 norm is taken.
struct NormBall {
  Point center;
  double radius = 2.0;
};

/// Psi_{jm} = e^{i m theta_j} for |m| <= truncation, columns ordered m = -N_t..N_t.
CMatrix fourier_basis(const forward::DirectionSet& dirs, int truncation);

/// Herglotz kernel stored as samples g_j at equispaced directions.
class HerglotzKernel {
 public:
  HerglotzKernel(double k, forward::DirectionSet dirs, CVector samples);

  /// g(theta_j) = sum_m c_m e^{i m theta_j}; coefficients ordered m = -N_t..N_t.
  static HerglotzKernel from_fourier(double k, const forward::DirectionSet& dirs, const CVector& coeffs);

  /// c_m = (1/count) sum_j g_j e^{-i m theta_j}. Inverts from_fourier when count >= 2 N_t + 1.
  CVector fourier_coefficients(int truncation) const;

  double wavenumber() const noexcept { return k_; }
  const forward::DirectionSet& directions() const noexcept { return dirs_; }
  const CVector& samples() const noexcept { return samples_; }

 private:
  double k_;
  forward::DirectionSet dirs_;
  CVector samples_;
};

/// v_g(z) = sum_j w g_j e^{ik z . d_j}.
cplx eval_wave(const HerglotzKernel& g, Point z);

/// B_{jl} = w^2 (1 + k^2 d_j . d_l) int_Omega e^{ik (d_l - d_j) . x} dx, so that
/// ||v_g||^2_{H^1(Omega)} = g^* B g.
CMatrix gram_h1(double k, const forward::DirectionSet& dirs, const NormBall& ball);

/// Thread-safe memo of gram_h1 keyed by (k, count, ball).
class GramCache {
 public:
  std::shared_ptr<const CMatrix> get(double k, const forward::DirectionSet& dirs, const NormBall& ball);
  std::size_t size() const;

 private:
  using Key = std::tuple<double, int, double, double, double>;
  mutable std::mutex mutex_;
  std::map<Key, std::shared_ptr<const CMatrix>> entries_;
};

}  // namespace eigenscat::herglotz
