#include "eigenscat/herglotz.hpp"

#include <cmath>

#include "eigenscat/errors.hpp"
#include "eigenscat/specfun.hpp"

namespace eigenscat::herglotz {

CMatrix fourier_basis(const forward::DirectionSet& dirs, int truncation) {
  if (truncation < 0) throw InputError("fourier basis: truncation must be non-negative");
  CMatrix psi(dirs.count(), 2 * truncation + 1);
  for (int j = 0; j < dirs.count(); ++j) {
    for (int m = -truncation; m <= truncation; ++m) psi(j, m + truncation) = std::polar(1.0, m * dirs.angle(j));
  }
  return psi;
}

HerglotzKernel::HerglotzKernel(double k, forward::DirectionSet dirs, CVector samples)
    : k_(k), dirs_(dirs), samples_(std::move(samples)) {
  if (samples_.size() != dirs_.count()) throw InputError("herglotz: sample count does not match directions");
  if (!samples_.allFinite()) throw InputError("herglotz: non-finite kernel");
}

HerglotzKernel HerglotzKernel::from_fourier(double k, const forward::DirectionSet& dirs, const CVector& coeffs) {
  if (coeffs.size() % 2 == 0) throw InputError("herglotz: coefficient vector must have odd length");
  const int nt = static_cast<int>(coeffs.size() / 2);
  return {k, dirs, fourier_basis(dirs, nt) * coeffs};
}

CVector HerglotzKernel::fourier_coefficients(int truncation) const {
  return fourier_basis(dirs_, truncation).adjoint() * samples_ / static_cast<double>(dirs_.count());
}

cplx eval_wave(const HerglotzKernel& g, Point z) {
  const auto& dirs = g.directions();
  const double k = g.wavenumber();
  cplx acc = 0.0;
  for (int j = 0; j < dirs.count(); ++j) acc += g.samples()(j) * std::exp(I * (k * dot(z, dirs.direction(j))));
  return dirs.weight() * acc;
}

CMatrix gram_h1(double k, const forward::DirectionSet& dirs, const NormBall& ball) {
  if (!(ball.radius > 0.0)) throw InputError("gram: ball radius must be positive");
  const int n = dirs.count();
  const double w = dirs.weight();
  const double rho = ball.radius;
  const double area = pi * rho * rho;
  CMatrix b(n, n);
  for (int j = 0; j < n; ++j) {
    const Point dj = dirs.direction(j);
    b(j, j) = w * w * (1.0 + k * k) * area;
    for (int l = j + 1; l < n; ++l) {
      const Point dl = dirs.direction(l);
      const Point kappa = k * (dl - dj);
      const double s = norm(kappa) * rho;
      const double shape = (s == 0.0) ? 1.0 : 2.0 * specfun::bessel_j(1, s) / s;
      const cplx v = w * w * (1.0 + k * k * dot(dj, dl)) * area * shape * std::exp(I * dot(kappa, ball.center));
      b(j, l) = v;
      b(l, j) = std::conj(v);
    }
  }
  return b;
}

std::shared_ptr<const CMatrix> GramCache::get(double k, const forward::DirectionSet& dirs, const NormBall& ball) {
  const Key key{k, dirs.count(), ball.center.x, ball.center.y, ball.radius};
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto b = std::make_shared<const CMatrix>(gram_h1(k, dirs, ball));
  std::lock_guard lock(mutex_);
  return entries_.emplace(key, std::move(b)).first->second;
}

std::size_t GramCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

}  // namespace eigenscat::herglotz
