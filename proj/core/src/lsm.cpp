#include "eigenscat/lsm.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "eigenscat/errors.hpp"
#include "eigenscat/format.hpp"

namespace eigenscat::lsm {

CVector test_rhs(Point z, double k, const forward::DirectionSet& obs) {
  if (!(k > 0.0)) throw InputError("test_rhs: wavenumber must be positive");
  const cplx gamma = farfield_gamma(k);
  CVector r(obs.count());
  for (int i = 0; i < obs.count(); ++i) r(i) = gamma * std::exp(-I * (k * dot(obs.direction(i), z)));
  return r;
}

CVector tikhonov_solve(const CMatrix& a, const CVector& rhs, double delta, const RVector& weights) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InputError("tikhonov: delta must be positive");
  if (a.rows() != rhs.size() || a.cols() != weights.size()) throw InputError("tikhonov: dimension mismatch");
  if (!a.allFinite() || !rhs.allFinite() || !weights.allFinite()) throw InputError("tikhonov: non-finite input");
  const CMatrix f = a * weights.cast<cplx>().asDiagonal();
  const Eigen::BDCSVD<CMatrix> svd(f, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& s = svd.singularValues();
  CVector coeff = svd.matrixU().adjoint() * rhs;
  for (Eigen::Index i = 0; i < s.size(); ++i) coeff(i) *= s(i) / (delta + s(i) * s(i));
  return svd.matrixV() * coeff;
}

std::vector<std::pair<std::size_t, double>> local_maxima(const std::vector<double>& curve) {
  std::vector<std::pair<std::size_t, double>> out;
  const std::size_t n = curve.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (!(curve[i] > curve[i - 1])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && curve[j + 1] == curve[i]) ++j;
    if (j + 1 >= n || !(curve[j + 1] < curve[i])) {
      i = j + 1;
      continue;
    }
    const double v = curve[i];
    double left = v;
    for (std::size_t l = i; l-- > 0;) {
      if (curve[l] > v) break;
      left = std::min(left, curve[l]);
    }
    double right = v;
    for (std::size_t r = j + 1; r < n; ++r) {
      if (curve[r] > v) break;
      right = std::min(right, curve[r]);
    }
    out.emplace_back(i, v - std::max(left, right));
    i = j + 1;
  }
  return out;
}

std::vector<std::size_t> detect_peaks(const std::vector<double>& curve, double min_prominence) {
  std::vector<std::size_t> out;
  if (curve.size() < 3) return out;
  const auto [lo, hi] = std::minmax_element(curve.begin(), curve.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  for (const auto& [idx, prom] : local_maxima(curve)) {
    if (prom >= min_prominence * range) out.push_back(idx);
  }
  return out;
}

double indicator_at(const CMatrix& a, double k, const forward::DirectionSet& obs,
                    const forward::DirectionSet& inc, const TikhonovConfig& cfg) {
  if (cfg.probes.empty()) throw InputError("scan: at least one probe point is required");
  const RVector weights = RVector::Constant(inc.count(), inc.weight());
  double total = 0.0;
  for (const Point& z : cfg.probes) {
    const CVector g = tikhonov_solve(a, test_rhs(z, k, obs), cfg.delta, weights);
    total += inc.weight() * g.squaredNorm();
  }
  return total / static_cast<double>(cfg.probes.size());
}

ScanResult scan(const forward::FarFieldDataset& data, const TikhonovConfig& cfg) {
  ScanResult result;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!data.matrices[i]) {
      std::string why = data.status[i].empty() ? "missing" : data.status[i];
      result.warnings.push_back("k=" + format_double(data.wavenumbers[i]) + " skipped: " + why);
      continue;
    }
    result.wavenumbers.push_back(data.wavenumbers[i]);
    result.indicator.push_back(indicator_at(*data.matrices[i], data.wavenumbers[i], data.obs, data.inc, cfg));
  }
  const auto [lo, hi] = result.indicator.empty()
                            ? std::pair{0.0, 0.0}
                            : std::pair{*std::min_element(result.indicator.begin(), result.indicator.end()),
                                        *std::max_element(result.indicator.begin(), result.indicator.end())};
  const double range = hi - lo;
  if (result.indicator.size() >= 3 && range > 0.0) {
    for (const auto& [idx, prom] : local_maxima(result.indicator)) {
      if (prom >= cfg.min_prominence * range) result.peaks.push_back({idx, result.wavenumbers[idx], prom});
    }
  }
  return result;
}

}  // namespace eigenscat::lsm
