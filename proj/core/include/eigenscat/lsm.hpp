#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eigenscat/forward.hpp"
#include "eigenscat/types.hpp"

namespace eigenscat::lsm {

struct TikhonovConfig {
  double delta = 1e-5;
  /// Probe points inside D; the indicator is averaged over them.
  std::vector<Point> probes{Point{0.0, 0.0}};
  /// Relative prominence threshold for peak detection.
  double min_prominence = 0.1;
};

struct Peak {
  std::size_t index = 0;  // position in ScanResult::wavenumbers
  double k = 0.0;
  double prominence = 0.0;
};

struct ScanResult {
  std::vector<double> wavenumbers;  // samples with data, ascending
  std::vector<double> indicator;    // ||g_delta||^2 per sample
  std::vector<Peak> peaks;          // ascending in k
  std::vector<std::string> warnings;
};

/// Phi_inf(xhat_i; z) = gamma e^{-ik xhat_i . z}.
CVector test_rhs(Point z, double k, const forward::DirectionSet& obs);

/// Solves (delta I + F^* F) g = F^* rhs with F = A diag(weights) through the SVD of F.
/// Throws InputError on non-finite input or delta <= 0.
CVector tikhonov_solve(const CMatrix& a, const CVector& rhs, double delta, const RVector& weights);

/// Topographic prominence of every strict local maximum (plateaus collapse to
/// their leftmost index; endpoints never qualify). Returns (index, prominence).
std::vector<std::pair<std::size_t, double>> local_maxima(const std::vector<double>& curve);

/// Indices of local maxima with prominence >= min_prominence * (max - min).
std::vector<std::size_t> detect_peaks(const std::vector<double>& curve, double min_prominence);

/// Indicator sum_j w |g_j|^2 at one wavenumber, averaged over the probes.
double indicator_at(const CMatrix& a, double k, const forward::DirectionSet& obs,
                    const forward::DirectionSet& inc, const TikhonovConfig& cfg);

/// Runs the indicator over every available matrix. Missing matrices are
/// skipped and reported in warnings.
ScanResult scan(const forward::FarFieldDataset& data, const TikhonovConfig& cfg);

}  // namespace eigenscat::lsm
