#include "eigenscat/lippmann_schwinger.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>

#include "eigenscat/errors.hpp"
#include "eigenscat/forward.hpp"
#include "eigenscat/gmres.hpp"
#include "eigenscat/specfun.hpp"
#include "quadrature.hpp"

namespace eigenscat::forward {
namespace {

// FFTW planning is not thread-safe; execution with new arrays is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))), size(n) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  cplx* as_complex() { return reinterpret_cast<cplx*>(data); }

  fftw_complex* data;
  std::size_t size;
};

}  // namespace

struct LippmannSchwinger::Fft {
  int padded = 0;
  FftwBuffer kernel_hat;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Fft(int p) : padded(p), kernel_hat(static_cast<std::size_t>(p) * p) {
    std::lock_guard lock(fftw_planner_mutex());
    forward = fftw_plan_dft_2d(p, p, kernel_hat.data, kernel_hat.data, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_2d(p, p, kernel_hat.data, kernel_hat.data, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
};

cplx self_cell_integral(double k, double h) {
  static const detail::GaussLegendre gl = detail::gauss_legendre(32);
  const double a = 0.5 * h;
  const double inv2pi = 1.0 / (2.0 * pi);
  cplx total = 0.0;
  // By symmetry the square is eight copies of the triangle 0 <= phi <= pi/4.
  for (std::size_t ip = 0; ip < gl.nodes.size(); ++ip) {
    const double phi = (gl.nodes[ip] + 1.0) * pi / 8.0;
    const double wphi = gl.weights[ip] * pi / 8.0;
    const double rho = a / std::cos(phi);
    cplx radial = -inv2pi * (0.5 * rho * rho * std::log(rho) - 0.25 * rho * rho);
    for (std::size_t ir = 0; ir < gl.nodes.size(); ++ir) {
      const double r = 0.5 * (gl.nodes[ir] + 1.0) * rho;
      const double wr = 0.5 * gl.weights[ir] * rho;
      const double kr = k * r;
      const double j0 = specfun::bessel_j(0, kr);
      const double lr = std::log(r);
      const double smooth_y = specfun::bessel_y(0, kr) - (2.0 / pi) * lr * j0;
      const cplx f = 0.25 * I * j0 - 0.25 * smooth_y - inv2pi * lr * (j0 - 1.0);
      radial += wr * r * f;
    }
    total += wphi * radial;
  }
  return 8.0 * total;
}

int LippmannSchwinger::auto_cells(const media::MediumScene& scene, double k, const LsOptions& opts) {
  const media::Box b = scene.bounding_box();
  const double side = std::max(b.width(), b.height());
  const double wavelength = 2.0 * pi / (k * std::sqrt(scene.max_index()));
  int n = static_cast<int>(std::ceil(opts.points_per_wavelength * side / wavelength));
  n = std::max(n, opts.min_cells);
  return (n + 3) / 4 * 4;
}

LippmannSchwinger::LippmannSchwinger(const media::MediumScene& scene, double k, const LsOptions& opts)
    : k_(k), opts_(opts) {
  if (!(k > 0.0) || !std::isfinite(k)) throw InputError("ls: wavenumber must be positive");
  cells_ = opts.cells > 0 ? opts.cells : auto_cells(scene, k, opts);
  const media::Box b = scene.bounding_box();
  const double side = std::max(b.width(), b.height());
  const Point c{0.5 * (b.lo.x + b.hi.x), 0.5 * (b.lo.y + b.hi.y)};
  spacing_ = side / cells_;
  origin_ = {c.x - 0.5 * side, c.y - 0.5 * side};
  const int n = cells_;
  contrast_.resize(static_cast<std::size_t>(n) * n);
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const Point lo{origin_.x + ix * spacing_, origin_.y + iy * spacing_};
      const Point hi{lo.x + spacing_, lo.y + spacing_};
      contrast_[static_cast<std::size_t>(ix) * n + iy] = scene.cell_contrast(lo, hi);
    }
  }
  initialise(scene.max_index());
}

LippmannSchwinger::LippmannSchwinger(Point origin, double spacing, int cells, double k, std::vector<double> contrast,
                                     const LsOptions& opts)
    : k_(k), cells_(cells), spacing_(spacing), origin_(origin), opts_(opts), contrast_(std::move(contrast)) {
  if (!(k > 0.0) || !std::isfinite(k)) throw InputError("ls: wavenumber must be positive");
  if (cells < 1 || !(spacing > 0.0)) throw InputError("ls: grid must have positive size");
  if (contrast_.size() != static_cast<std::size_t>(cells) * cells) throw InputError("ls: contrast size mismatch");
  double max_index = 1.0;
  for (double m : contrast_) {
    if (!std::isfinite(m) || !(m > -1.0)) throw InputError("ls: contrast must be finite with n = 1 + m > 0");
    max_index = std::max(max_index, 1.0 + m);
  }
  initialise(max_index);
}

void LippmannSchwinger::initialise(double max_index) {
  const double k = k_;
  const double wavelength = 2.0 * pi / (k * std::sqrt(max_index));
  if (wavelength / spacing_ < opts_.min_points_per_wavelength) {
    throw InputError("ls: grid has " + std::to_string(wavelength / spacing_) +
                     " points per interior wavelength, need at least " +
                     std::to_string(opts_.min_points_per_wavelength));
  }
  const int n = cells_;
  trivial_ = std::all_of(contrast_.begin(), contrast_.end(), [](double m) { return m == 0.0; });
  if (trivial_) return;
  const int p = 2 * n;
  fft_ = std::make_unique<Fft>(p);
  cplx* ker = fft_->kernel_hat.as_complex();
  std::fill(ker, ker + static_cast<std::size_t>(p) * p, cplx{0.0});
  const double h2 = spacing_ * spacing_;
  std::vector<cplx> quadrant(static_cast<std::size_t>(n) * n);
  for (int dx = 0; dx < n; ++dx) {
    for (int dy = dx; dy < n; ++dy) {
      cplx g;
      if (dx == 0 && dy == 0) {
        g = self_cell_integral(k, spacing_);
      } else {
        const double r = spacing_ * std::hypot(static_cast<double>(dx), static_cast<double>(dy));
        g = 0.25 * I * specfun::bessel_h1(0, k * r) * h2;
      }
      quadrant[static_cast<std::size_t>(dx) * n + dy] = g;
      quadrant[static_cast<std::size_t>(dy) * n + dx] = g;
    }
  }
  for (int dx = -(n - 1); dx <= n - 1; ++dx) {
    for (int dy = -(n - 1); dy <= n - 1; ++dy) {
      const int wx = (dx + p) % p;
      const int wy = (dy + p) % p;
      ker[static_cast<std::size_t>(wx) * p + wy] =
          quadrant[static_cast<std::size_t>(std::abs(dx)) * n + std::abs(dy)];
    }
  }
  fftw_execute_dft(fft_->forward, fft_->kernel_hat.data, fft_->kernel_hat.data);
  const double inv = 1.0 / (static_cast<double>(p) * p);
  for (std::size_t i = 0; i < static_cast<std::size_t>(p) * p; ++i) ker[i] *= inv;
}

LippmannSchwinger::~LippmannSchwinger() = default;

void LippmannSchwinger::apply(const CVector& u, CVector& y) const {
  const int n = cells_;
  y.resize(u.size());
  if (trivial_) {
    y = u;
    return;
  }
  const int p = fft_->padded;
  thread_local std::unique_ptr<FftwBuffer> scratch;
  if (!scratch || scratch->size != static_cast<std::size_t>(p) * p) {
    scratch = std::make_unique<FftwBuffer>(static_cast<std::size_t>(p) * p);
  }
  FftwBuffer& work = *scratch;
  cplx* buf = work.as_complex();
  std::fill(buf, buf + work.size, cplx{0.0});
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const std::size_t c = static_cast<std::size_t>(ix) * n + iy;
      buf[static_cast<std::size_t>(ix) * p + iy] = contrast_[c] * u(static_cast<Eigen::Index>(c));
    }
  }
  fftw_execute_dft(fft_->forward, work.data, work.data);
  const cplx* ker = fft_->kernel_hat.as_complex();
  for (std::size_t i = 0; i < work.size; ++i) buf[i] *= ker[i];
  fftw_execute_dft(fft_->backward, work.data, work.data);
  const double k2 = k_ * k_;
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const std::size_t c = static_cast<std::size_t>(ix) * n + iy;
      y(static_cast<Eigen::Index>(c)) = u(static_cast<Eigen::Index>(c)) - k2 * buf[static_cast<std::size_t>(ix) * p + iy];
    }
  }
}

TotalField LippmannSchwinger::solve(Point d) const {
  const int n = cells_;
  TotalField field;
  field.cells = n;
  field.spacing = spacing_;
  field.origin = origin_;
  CVector b(static_cast<Eigen::Index>(n) * n);
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      b(static_cast<Eigen::Index>(ix) * n + iy) = std::exp(I * (k_ * dot(d, field.center(ix, iy))));
    }
  }
  CVector x = b;
  GmresResult res;
  if (!trivial_) {
    GmresOptions go{opts_.tolerance, opts_.restart, opts_.max_iterations};
    res = gmres([this](const CVector& in, CVector& out) { apply(in, out); }, b, x, go);
    if (!res.converged) {
      throw SolverError("ls: GMRES stopped at relative residual " + std::to_string(res.relative_residual) +
                            " after " + std::to_string(res.iterations) + " iterations",
                        res.relative_residual, res.iterations);
    }
  }
  field.iterations = res.iterations;
  field.residual = res.relative_residual;
  field.values.assign(x.data(), x.data() + x.size());
  return field;
}

cplx LippmannSchwinger::farfield(const TotalField& u, Point xhat) const {
  cplx acc = 0.0;
  for (int ix = 0; ix < cells_; ++ix) {
    for (int iy = 0; iy < cells_; ++iy) {
      const double m = contrast_[static_cast<std::size_t>(ix) * cells_ + iy];
      if (m == 0.0) continue;
      acc += m * u.at(ix, iy) * std::exp(-I * (k_ * dot(xhat, u.center(ix, iy))));
    }
  }
  return farfield_gamma(k_) * k_ * k_ * spacing_ * spacing_ * acc;
}

CMatrix LippmannSchwinger::farfield_matrix(const DirectionSet& obs, const DirectionSet& inc) const {
  const int n = cells_;
  const int mo = obs.count();
  const int mi = inc.count();
  CMatrix out = CMatrix::Zero(mo, mi);
  if (trivial_) return out;

  // e^{-ik xhat.x} factorises into x- and y-parts on the tensor grid.
  CMatrix ex(mo, n);
  CMatrix ey(mo, n);
  for (int i = 0; i < mo; ++i) {
    const Point xh = obs.direction(i);
    for (int c = 0; c < n; ++c) {
      const double coord_x = origin_.x + (c + 0.5) * spacing_;
      const double coord_y = origin_.y + (c + 0.5) * spacing_;
      ex(i, c) = std::exp(-I * (k_ * xh.x * coord_x));
      ey(i, c) = std::exp(-I * (k_ * xh.y * coord_y));
    }
  }
  const cplx scale = farfield_gamma(k_) * k_ * k_ * spacing_ * spacing_;

  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < mi; ++j) {
    try {
      const TotalField u = solve(inc.direction(j));
      CMatrix w(n, n);
      for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
          w(ix, iy) = contrast_[static_cast<std::size_t>(ix) * n + iy] * u.at(ix, iy);
        }
      }
      const CMatrix t = ex * w;  // mo x n, indexed by iy
      for (int i = 0; i < mo; ++i) out(i, j) = scale * (t.row(i).array() * ey.row(i).array()).sum();
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

TotalField ls_solve(const media::MediumScene& scene, double k, Point d, const LsOptions& opts) {
  return LippmannSchwinger(scene, k, opts).solve(d);
}

cplx ls_farfield(const media::MediumScene& scene, double k, Point xhat, Point d, const LsOptions& opts) {
  const LippmannSchwinger solver(scene, k, opts);
  return solver.farfield(solver.solve(d), xhat);
}

CMatrix ls_farfield_matrix(const media::MediumScene& scene, double k, const DirectionSet& obs,
                           const DirectionSet& inc, const LsOptions& opts) {
  if (!opts.richardson) return LippmannSchwinger(scene, k, opts).farfield_matrix(obs, inc);
  LsOptions fine = opts;
  fine.cells = opts.cells > 0 ? opts.cells : LippmannSchwinger::auto_cells(scene, k, opts);
  if (fine.cells % 2 != 0) ++fine.cells;
  LsOptions coarse = fine;
  coarse.cells = fine.cells / 2;
  coarse.min_points_per_wavelength = 0.5 * fine.min_points_per_wavelength;
  const CMatrix a_fine = LippmannSchwinger(scene, k, fine).farfield_matrix(obs, inc);
  const CMatrix a_coarse = LippmannSchwinger(scene, k, coarse).farfield_matrix(obs, inc);
  return (4.0 * a_fine - a_coarse) / 3.0;
}

}  // namespace eigenscat::forward
