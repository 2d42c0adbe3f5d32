#include "eigenscat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "eigenscat/errors.hpp"
#include "eigenscat/format.hpp"
#include "eigenscat/specfun.hpp"

namespace eigenscat::oracle {
namespace {

constexpr double kGridPerUnit = 2000.0;

void check_params(double radius, double n, double k_min, double k_max) {
  if (!(radius > 0.0)) throw InputError("oracle: radius must be positive");
  if (!(n > 0.0) || n == 1.0) throw InputError("oracle: index must be positive and different from 1");
  if (!(k_min >= 0.0) || !(k_max > k_min) || !std::isfinite(k_max)) {
    throw InputError("oracle: interval must satisfy 0 <= k_min < k_max");
  }
}

// Bisection runs until the bracket stops shrinking, well below the 1e-10 target.
void find_roots(const std::function<double(double)>& det, double k_min, double k_max, int index, Family family,
                EigenvalueList& out) {
  const int cells = std::max(1, static_cast<int>(std::ceil((k_max - k_min) * kGridPerUnit)));
  const double h = (k_max - k_min) / cells;
  // A zero determinant at k = 0 is the trivial solution, not an eigenvalue.
  const double lo_k = (k_min == 0.0) ? h * 1e-3 : k_min;
  std::vector<double> grid(static_cast<std::size_t>(cells) + 1);
  std::vector<double> vals(grid.size());
  for (int i = 0; i <= cells; ++i) {
    grid[i] = (i == 0) ? lo_k : k_min + i * h;
    vals[i] = det(grid[i]);
  }
  auto local_scale = [&](int i) {
    double s = 0.0;
    for (int j = std::max(0, i - 10); j <= std::min(cells, i + 10); ++j) s = std::max(s, std::abs(vals[j]));
    return s;
  };
  for (int end : {0, cells}) {
    if (end == 0 && k_min == 0.0) continue;
    if (vals[end] == 0.0 || std::abs(vals[end]) < 1e-8 * local_scale(end)) {
      throw BracketError("oracle: interval endpoint k=" + format_double(grid[end]) + " is a root");
    }
  }
  for (int i = 0; i < cells; ++i) {
    double a = grid[i];
    double b = grid[i + 1];
    double fa = vals[i];
    const double fb = vals[i + 1];
    if (fa == 0.0 || std::signbit(fa) == std::signbit(fb)) continue;
    for (;;) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      const double fm = det(mid);
      if (fm == 0.0) {
        a = b = mid;
        break;
      }
      if (std::signbit(fm) == std::signbit(fa)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    out.push_back({0.5 * (a + b), index, family, h});
  }
}

void sort_list(EigenvalueList& list) {
  std::sort(list.begin(), list.end(), [](const Eigenvalue& x, const Eigenvalue& y) {
    if (x.k != y.k) return x.k < y.k;
    return x.index < y.index;
  });
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::disk: return "disk";
    case Family::sphere_te: return "TE";
    case Family::sphere_tm: return "TM";
  }
  return "unknown";
}

double disk_determinant(int m, double k, double radius, double n) {
  const double q = std::sqrt(n) * k;
  return specfun::bessel_j(m, k * radius) * q * specfun::bessel_j_prime(m, q * radius) -
         k * specfun::bessel_j_prime(m, k * radius) * specfun::bessel_j(m, q * radius);
}

double sphere_te_determinant(int l, double k, double radius, double n) {
  const double x = k * radius;
  const double y = std::sqrt(n) * x;
  return x * specfun::spherical_j(l, y) * specfun::spherical_j_prime(l, x) -
         y * specfun::spherical_j(l, x) * specfun::spherical_j_prime(l, y);
}

double sphere_tm_determinant(int l, double k, double radius, double n) {
  const double x = k * radius;
  const double y = std::sqrt(n) * x;
  const double jx = specfun::spherical_j(l, x);
  const double jy = specfun::spherical_j(l, y);
  return (jy + y * specfun::spherical_j_prime(l, y)) * jx - n * jy * (jx + x * specfun::spherical_j_prime(l, x));
}

EigenvalueList disk_tev(double radius, double n, double k_min, double k_max, int max_m) {
  check_params(radius, n, k_min, k_max);
  if (max_m < 0) throw InputError("oracle: max_m must be non-negative");
  EigenvalueList out;
  for (int m = 0; m <= max_m; ++m) {
    find_roots([&](double k) { return disk_determinant(m, k, radius, n); }, k_min, k_max, m,
               Family::disk, out);
  }
  sort_list(out);
  return out;
}

EigenvalueList sphere_maxwell_tev(double radius, double n, double k_min, double k_max, int max_l) {
  check_params(radius, n, k_min, k_max);
  if (max_l < 1) throw InputError("oracle: max_l must be at least 1");
  EigenvalueList out;
  for (int l = 1; l <= max_l; ++l) {
    find_roots([&](double k) { return sphere_te_determinant(l, k, radius, n); }, k_min, k_max, l,
               Family::sphere_te, out);
    find_roots([&](double k) { return sphere_tm_determinant(l, k, radius, n); }, k_min, k_max, l,
               Family::sphere_tm, out);
  }
  sort_list(out);
  return out;
}

DiskEigenfunction::DiskEigenfunction(double k, int m, double n, double radius)
    : k_(k), m_(m), n_(n), radius_(radius) {
  if (!(k > 0.0) || !(radius > 0.0) || !(n > 0.0)) throw InputError("disk eigenfunction: invalid parameters");
  const double jq = specfun::bessel_j(m, std::sqrt(n) * k * radius);
  if (jq == 0.0) throw NumericalError("disk eigenfunction: interior Bessel factor vanishes on the boundary");
  c_ = specfun::bessel_j(m, k * radius) / jq;
}

cplx DiskEigenfunction::value(Point z) const {
  return specfun::bessel_j(m_, k_ * norm(z)) * std::polar(1.0, m_ * std::atan2(z.y, z.x));
}

cplx DiskEigenfunction::partner(Point z) const {
  return c_ * specfun::bessel_j(m_, std::sqrt(n_) * k_ * norm(z)) * std::polar(1.0, m_ * std::atan2(z.y, z.x));
}

cplx DiskEigenfunction::value_dr(Point z) const {
  return k_ * specfun::bessel_j_prime(m_, k_ * norm(z)) * std::polar(1.0, m_ * std::atan2(z.y, z.x));
}

cplx DiskEigenfunction::partner_dr(Point z) const {
  const double q = std::sqrt(n_) * k_;
  return c_ * q * specfun::bessel_j_prime(m_, q * norm(z)) * std::polar(1.0, m_ * std::atan2(z.y, z.x));
}

}  // namespace eigenscat::oracle
