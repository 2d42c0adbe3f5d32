#pragma once

#include <memory>
#include <vector>

#include "eigenscat/media.hpp"
#include "eigenscat/types.hpp"

namespace eigenscat::forward {

class DirectionSet;

struct LsOptions {
  /// Cells per axis; 0 picks max(min_cells, points_per_wavelength rule).
  int cells = 0;
  double points_per_wavelength = 20.0;
  /// Resolution precondition: construction fails below this many cells per
  /// interior wavelength.
  double min_points_per_wavelength = 10.0;
  int min_cells = 32;
  double tolerance = 1e-8;
  int restart = 100;
  int max_iterations = 2000;
  /// Far fields from grids N/2 and N combined as (4 A_N - A_{N/2}) / 3.
  /// The precondition applies to the fine grid.
  bool richardson = false;
};

/// Total field on the collocation grid, cell-major (ix * cells + iy).
struct TotalField {
  int cells = 0;
  double spacing = 0.0;
  Point origin;  // lower-left corner of the grid box
  std::vector<cplx> values;
  int iterations = 0;
  double residual = 0.0;

  Point center(int ix, int iy) const {
    return {origin.x + (ix + 0.5) * spacing, origin.y + (iy + 0.5) * spacing};
  }
  cplx at(int ix, int iy) const { return values[static_cast<std::size_t>(ix) * cells + iy]; }
};

/// Collocation solver for u = u^i + k^2 int Phi_k(x, y) m(y) u(y) dy on a
/// uniform square grid covering D. The convolution is applied by FFT and the
/// system solved with GMRES. Off-diagonal kernel entries use the midpoint
/// rule; the self cell uses the integral of Phi_k over the cell with the
/// logarithmic part integrated analytically.
class LippmannSchwinger {
 public:
  LippmannSchwinger(const media::MediumScene& scene, double k, const LsOptions& opts);
  /// Grid given directly: `cells` x `cells` squares of side `spacing` starting
  /// at `origin`, with per-cell contrast (ix * cells + iy).
  LippmannSchwinger(Point origin, double spacing, int cells, double k, std::vector<double> contrast,
                    const LsOptions& opts);
  ~LippmannSchwinger();
  LippmannSchwinger(const LippmannSchwinger&) = delete;
  LippmannSchwinger& operator=(const LippmannSchwinger&) = delete;

  int cells() const noexcept { return cells_; }
  double spacing() const noexcept { return spacing_; }
  double wavenumber() const noexcept { return k_; }
  const std::vector<double>& contrast() const noexcept { return contrast_; }

  /// y = u - k^2 G (m u).
  void apply(const CVector& u, CVector& y) const;

  /// Throws SolverError if GMRES misses the tolerance within the iteration cap.
  TotalField solve(Point d) const;

  cplx farfield(const TotalField& u, Point xhat) const;
  CMatrix farfield_matrix(const DirectionSet& obs, const DirectionSet& inc) const;

  /// Cell count the automatic rule would pick for this scene and k.
  static int auto_cells(const media::MediumScene& scene, double k, const LsOptions& opts);

 private:
  struct Fft;
  void initialise(double max_index);

  double k_;
  int cells_;
  double spacing_;
  Point origin_;
  LsOptions opts_;
  std::vector<double> contrast_;
  bool trivial_ = false;
  std::unique_ptr<Fft> fft_;
};

/// Integral of Phi_k(y) = (i/4) H0(k|y|) over the square [-h/2, h/2]^2.
cplx self_cell_integral(double k, double h);

TotalField ls_solve(const media::MediumScene& scene, double k, Point d, const LsOptions& opts = {});
cplx ls_farfield(const media::MediumScene& scene, double k, Point xhat, Point d, const LsOptions& opts = {});
/// Full obs x inc matrix; applies Richardson extrapolation when opts.richardson.
CMatrix ls_farfield_matrix(const media::MediumScene& scene, double k, const DirectionSet& obs,
                           const DirectionSet& inc, const LsOptions& opts = {});

}  // namespace eigenscat::forward
