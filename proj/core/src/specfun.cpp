#include "eigenscat/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "eigenscat/errors.hpp"

namespace eigenscat::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleFactor = 1e-250;
constexpr double kNeumannLimit = 25.0;

void check_cylindrical(int order, double x) {
  if (order > max_cylindrical_order || order < -max_cylindrical_order) {
    throw DomainError("bessel: |order| " + std::to_string(order) + " exceeds " +
                      std::to_string(max_cylindrical_order));
  }
  if (!std::isfinite(x)) throw DomainError("bessel: non-finite argument");
}

void check_spherical(int order, double x) {
  if (order < 0 || order > max_spherical_order) {
    throw DomainError("spherical bessel: order " + std::to_string(order) +
                      " outside [0, " + std::to_string(max_spherical_order) + "]");
  }
  if (!std::isfinite(x)) throw DomainError("spherical bessel: non-finite argument");
}

// Even start index for backward recurrence: past the turning point by enough
// that the neglected minimal-solution tail is below double precision.
int miller_start(int max_order, double x) {
  const double base = std::max(static_cast<double>(max_order), x);
  int n = static_cast<int>(base + 20.0 + 12.0 * std::cbrt(x)) + 2;
  return n + (n & 1);
}

double odd_sign(int m) { return (m & 1) ? -1.0 : 1.0; }

// J_0..J_{out.size()-1} for x > 0.
void j_sequence_positive(double x, std::span<double> out) {
  const int mmax = static_cast<int>(out.size()) - 1;
  const int start = miller_start(mmax, x);
  std::fill(out.begin(), out.end(), 0.0);

  double j_next = 0.0;    // J_{k+1}
  double j_curr = 1e-30;  // J_k
  double even_sum = 0.0;  // 2 * sum_{even k >= 2} J_k
  if (start <= mmax) out[start] = j_curr;
  int filled_from = mmax + 1;

  for (int k = start; k >= 1; --k) {
    const double j_prev = (2.0 * k / x) * j_curr - j_next;
    const int idx = k - 1;
    if (idx <= mmax) {
      out[idx] = j_prev;
      filled_from = idx;
    }
    if (idx > 0 && (idx & 1) == 0) even_sum += 2.0 * j_prev;
    j_next = j_curr;
    j_curr = j_prev;
    if (std::abs(j_curr) > kRescaleAbove) {
      j_curr *= kRescaleFactor;
      j_next *= kRescaleFactor;
      even_sum *= kRescaleFactor;
      for (int i = filled_from; i <= mmax; ++i) out[i] *= kRescaleFactor;
    }
  }
  const double scale = 1.0 / (j_curr + even_sum);
  for (double& v : out) v *= scale;
}

struct Y01 {
  double y0;
  double y1;
};

Y01 y01_neumann(double x) {
  const int kmax = miller_start(0, x) + 2;
  std::vector<double> j(static_cast<std::size_t>(kmax) + 2);
  j_sequence_positive(x, j);
  const double log_term = std::log(x / 2.0) + kEulerGamma;
  double s0 = 0.0;
  double s1 = 0.0;
  for (int k = 1; 2 * k + 1 < static_cast<int>(j.size()); ++k) {
    const double sgn = odd_sign(k);
    s0 += sgn * j[2 * k] / k;
    s1 += sgn * (j[2 * k - 1] - j[2 * k + 1]) / k;
  }
  const double y0 = (2.0 / kPi) * log_term * j[0] - (4.0 / kPi) * s0;
  const double y1 = (2.0 / kPi) * (log_term * j[1] - j[0] / x) + (2.0 / kPi) * s1;
  return {y0, y1};
}

// Hankel's expansion for order nu in {0, 1}; returns {J_nu, Y_nu}.
std::pair<double, double> hankel_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 0.0;
  double q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      term *= (mu - odd * odd) / (k * 8.0 * x);
    }
    const double mag = std::abs(term);
    if (mag > last) break;
    last = mag;
    // Terms alternate between P and Q with sign pattern (+P, +Q, -P, -Q, ...).
    const double signed_term = ((k / 2) & 1) ? -term : term;
    if ((k & 1) == 0) {
      p += signed_term;
    } else {
      q += signed_term;
    }
    if (mag < 1e-18) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  const double amp = std::sqrt(2.0 / (kPi * x));
  const double c = std::cos(chi);
  const double s = std::sin(chi);
  return {amp * (p * c - q * s), amp * (p * s + q * c)};
}

Y01 y01(double x) {
  if (x <= kNeumannLimit) return y01_neumann(x);
  return {hankel_asymptotic(0, x).second, hankel_asymptotic(1, x).second};
}

// Power series of j_l, and its derivative, for |x| < 1.
std::pair<double, double> spherical_series(int l, double x) {
  double prefactor = 1.0;  // x^l / (2l+1)!!
  for (int i = 1; i <= l; ++i) prefactor *= x / (2.0 * i + 1.0);
  const double x2 = x * x;
  double term = 1.0;
  double sum = 1.0;
  double dsum = static_cast<double>(l);  // sum of c_k (l + 2k) x^{2k}
  for (int k = 1; k < 60; ++k) {
    term *= -x2 / (2.0 * k * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    dsum += term * (l + 2.0 * k);
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  const double value = prefactor * sum;
  // d/dx [x^l S(x^2)] / (2l+1)!! = prefactor * dsum / x, with the x = 0 limit handled by the caller.
  const double deriv = (x == 0.0) ? 0.0 : prefactor * dsum / x;
  return {value, deriv};
}

// j_{l-1} and j_l for x >= 1 via normalised backward recurrence.
std::pair<double, double> spherical_pair_recurrence(int l, double x) {
  const int start = miller_start(l + 1, x);
  double s_next = 0.0;
  double s_curr = 1e-30;
  double s_l = (start == l) ? s_curr : 0.0;
  double s_lm1 = (start == l - 1) ? s_curr : 0.0;
  double s0 = 0.0;
  double s1 = (start == 1) ? s_curr : 0.0;
  for (int i = start; i >= 1; --i) {
    const double s_prev = ((2.0 * i + 1.0) / x) * s_curr - s_next;
    const int idx = i - 1;
    if (idx == l) s_l = s_prev;
    if (idx == l - 1) s_lm1 = s_prev;
    if (idx == 1) s1 = s_prev;
    if (idx == 0) s0 = s_prev;
    s_next = s_curr;
    s_curr = s_prev;
    if (std::abs(s_curr) > kRescaleAbove) {
      s_curr *= kRescaleFactor;
      s_next *= kRescaleFactor;
      s_l *= kRescaleFactor;
      s_lm1 *= kRescaleFactor;
      s1 *= kRescaleFactor;
    }
  }
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  const double scale = (std::abs(j0) >= std::abs(j1)) ? j0 / s0 : j1 / s1;
  return {s_lm1 * scale, s_l * scale};
}

}  // namespace

void bessel_j_sequence(double x, std::span<double> out) {
  if (out.empty()) return;
  check_cylindrical(static_cast<int>(out.size()) - 1, x);
  if (x == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    out[0] = 1.0;
    return;
  }
  j_sequence_positive(std::abs(x), out);
  if (x < 0.0) {
    for (std::size_t m = 1; m < out.size(); m += 2) out[m] = -out[m];
  }
}

void bessel_y_sequence(double x, std::span<double> out) {
  if (out.empty()) return;
  check_cylindrical(static_cast<int>(out.size()) - 1, x);
  if (x <= 0.0) throw DomainError("bessel_y: argument must be positive");
  const Y01 y = y01(x);
  out[0] = y.y0;
  if (out.size() > 1) out[1] = y.y1;
  for (std::size_t m = 1; m + 1 < out.size(); ++m) {
    out[m + 1] = (2.0 * static_cast<double>(m) / x) * out[m] - out[m - 1];
  }
}

double bessel_j(int order, double x) {
  check_cylindrical(order, x);
  const int m = std::abs(order);
  std::vector<double> buf(static_cast<std::size_t>(m) + 1);
  bessel_j_sequence(x, buf);
  return (order < 0) ? odd_sign(m) * buf[m] : buf[m];
}

double bessel_j_prime(int order, double x) {
  check_cylindrical(order, x);
  const int m = std::abs(order);
  std::vector<double> buf(static_cast<std::size_t>(m) + 2);
  bessel_j_sequence(x, buf);
  const double d = (m == 0) ? -buf[1] : 0.5 * (buf[m - 1] - buf[m + 1]);
  return (order < 0) ? odd_sign(m) * d : d;
}

double bessel_y(int order, double x) {
  check_cylindrical(order, x);
  const int m = std::abs(order);
  std::vector<double> buf(static_cast<std::size_t>(m) + 1);
  bessel_y_sequence(x, buf);
  return (order < 0) ? odd_sign(m) * buf[m] : buf[m];
}

double bessel_y_prime(int order, double x) {
  check_cylindrical(order, x);
  const int m = std::abs(order);
  std::vector<double> buf(static_cast<std::size_t>(m) + 2);
  bessel_y_sequence(x, buf);
  const double d = (m == 0) ? -buf[1] : 0.5 * (buf[m - 1] - buf[m + 1]);
  return (order < 0) ? odd_sign(m) * d : d;
}

std::complex<double> bessel_h1(int order, double x) {
  check_cylindrical(order, x);
  if (x <= 0.0) throw DomainError("bessel_h1: argument must be positive");
  return {bessel_j(order, x), bessel_y(order, x)};
}

std::complex<double> bessel_h1_prime(int order, double x) {
  check_cylindrical(order, x);
  if (x <= 0.0) throw DomainError("bessel_h1_prime: argument must be positive");
  return {bessel_j_prime(order, x), bessel_y_prime(order, x)};
}

double spherical_j(int order, double x) {
  check_spherical(order, x);
  const double sign = (x < 0.0) ? odd_sign(order) : 1.0;
  const double ax = std::abs(x);
  if (ax == 0.0) return order == 0 ? 1.0 : 0.0;
  if (ax < 1.0) return sign * spherical_series(order, ax).first;
  if (order == 0) return std::sin(ax) / ax;
  return sign * spherical_pair_recurrence(order, ax).second;
}

double spherical_j_prime(int order, double x) {
  check_spherical(order, x);
  // j_l' has parity (-1)^{l+1}.
  const double sign = (x < 0.0) ? -odd_sign(order) : 1.0;
  const double ax = std::abs(x);
  if (ax == 0.0) return order == 1 ? 1.0 / 3.0 : 0.0;
  if (ax < 1.0) return sign * spherical_series(order, ax).second;
  if (order == 0) {
    return sign * (std::cos(ax) / ax - std::sin(ax) / (ax * ax));
  }
  const auto [jm1, jl] = spherical_pair_recurrence(order, ax);
  return sign * (jm1 - (order + 1.0) / ax * jl);
}

}  // namespace eigenscat::specfun
