#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "eigenscat/errors.hpp"
#include "eigenscat/specfun.hpp"

namespace sf = eigenscat::specfun;
using std::numbers::pi;

namespace {

// Bessel's integral, trapezoid on a periodic integrand.
double j_integral(int m, double x) {
  const int n = 4000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * pi * i / n;
    s += std::cos(m * t - x * std::sin(t));
  }
  return s / n;
}

// Y_m(x) = (1/pi) int_0^pi sin(x sin t - m t) dt
//        - (1/pi) int_0^inf (e^{mt} + (-1)^m e^{-mt}) e^{-x sinh t} dt, by composite Simpson.
double y_integral(int m, double x) {
  auto simpson = [](auto f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return s * h / 3.0;
  };
  const double first = simpson([&](double t) { return std::sin(x * std::sin(t) - m * t); }, 0.0, pi, 20000);
  const double sign = (m % 2) ? -1.0 : 1.0;
  const double upper = std::asinh(40.0 / x + 1.0) + 2.0;
  const double second = simpson(
      [&](double t) { return (std::exp(m * t) + sign * std::exp(-m * t)) * std::exp(-x * std::sinh(t)); }, 0.0,
      upper, 40000);
  return (first - second) / pi;
}

// Abramowitz-Stegun 9.1.13 power series for Y0.
double y0_series(double x) {
  const double q = x * x / 4.0;
  double term = 1.0;
  double harmonic = 0.0;
  double j0 = 1.0;
  double tail = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    j0 += term;
    tail -= harmonic * term;
  }
  return (2.0 / pi) * ((std::log(x / 2.0) + std::numbers::egamma) * j0 + tail);
}

// j_l(x) = (1 / (2 i^l)) int_{-1}^{1} e^{ixt} P_l(t) dt, real part taken analytically.
double spherical_integral(int l, double x) {
  const int n = 20000;
  auto legendre = [l](double t) {
    double p0 = 1.0, p1 = t;
    if (l == 0) return p0;
    for (int k = 2; k <= l; ++k) {
      const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return p1;
  };
  // Even l: cos part; odd l: sin part.
  auto f = [&](double t) { return ((l % 2) ? std::sin(x * t) : std::cos(x * t)) * legendre(t); };
  const double h = 2.0 / n;
  double s = f(-1.0) + f(1.0);
  for (int i = 1; i < n; ++i) s += f(-1.0 + i * h) * ((i % 2) ? 4.0 : 2.0);
  const double integral = s * h / 3.0;
  const double sign = ((l / 2) % 2) ? -1.0 : 1.0;
  return 0.5 * sign * integral;
}

}  // namespace

TEST(Specfun, BesselJMatchesIntegralRepresentation) {
  for (int m : {0, 1, 2, 5, 10, 30}) {
    for (double x : {0.05, 0.9, 3.7, 12.0, 27.5, 60.0}) {
      EXPECT_NEAR(sf::bessel_j(m, x), j_integral(m, x), 1e-13) << "m=" << m << " x=" << x;
    }
  }
}

TEST(Specfun, BesselY0AtOneMatchesPowerSeries) {
  EXPECT_NEAR(sf::bessel_y(0, 1.0), y0_series(1.0), 1e-14);
  EXPECT_NEAR(sf::bessel_y(0, 4.5), y0_series(4.5), 1e-12);
}

TEST(Specfun, BesselYMatchesIntegralRepresentation) {
  for (int m : {0, 1, 3, 8}) {
    for (double x : {0.7, 5.0, 24.0, 26.0, 45.0}) {
      const double ref = y_integral(m, x);
      EXPECT_NEAR(sf::bessel_y(m, x), ref, 1e-9 * std::max(1.0, std::abs(ref))) << "m=" << m << " x=" << x;
    }
  }
}

TEST(Specfun, WronskianIdentity) {
  for (int m = 0; m <= 30; ++m) {
    for (double x : {0.3, 1.0, 2.5, 7.0, 19.0, 25.0, 25.5, 40.0, 90.0}) {
      if (m > 3.0 * x + 8.0) continue;  // Y_m overflows the comparison scale
      const double w = sf::bessel_j(m + 1, x) * sf::bessel_y(m, x) - sf::bessel_j(m, x) * sf::bessel_y(m + 1, x);
      const double ref = 2.0 / (pi * x);
      EXPECT_NEAR(w / ref, 1.0, 1e-10) << "m=" << m << " x=" << x;
    }
  }
}

TEST(Specfun, DerivativesMatchCentralDifferences) {
  const double h = 1e-5;
  for (int m : {0, 1, 4}) {
    for (double x : {0.8, 3.3, 30.0}) {
      const double dj = (sf::bessel_j(m, x + h) - sf::bessel_j(m, x - h)) / (2 * h);
      const double dy = (sf::bessel_y(m, x + h) - sf::bessel_y(m, x - h)) / (2 * h);
      EXPECT_NEAR(sf::bessel_j_prime(m, x), dj, 1e-8);
      EXPECT_NEAR(sf::bessel_y_prime(m, x), dy, 1e-8 * std::max(1.0, std::abs(dy)));
      const auto dh = sf::bessel_h1_prime(m, x);
      EXPECT_DOUBLE_EQ(dh.real(), sf::bessel_j_prime(m, x));
      EXPECT_DOUBLE_EQ(dh.imag(), sf::bessel_y_prime(m, x));
    }
  }
}

TEST(Specfun, NegativeOrderReflection) {
  for (int m = 1; m < 7; ++m) {
    const double s = (m % 2) ? -1.0 : 1.0;
    EXPECT_DOUBLE_EQ(sf::bessel_j(-m, 2.75), s * sf::bessel_j(m, 2.75));
    EXPECT_DOUBLE_EQ(sf::bessel_y(-m, 2.75), s * sf::bessel_y(m, 2.75));
  }
}

TEST(Specfun, SequenceAgreesWithSingleOrder) {
  std::vector<double> j(21), y(21);
  sf::bessel_j_sequence(6.5, j);
  sf::bessel_y_sequence(6.5, y);
  for (int m = 0; m <= 20; ++m) {
    EXPECT_DOUBLE_EQ(j[m], sf::bessel_j(m, 6.5));
    EXPECT_DOUBLE_EQ(y[m], sf::bessel_y(m, 6.5));
  }
}

TEST(Specfun, ValuesAtZero) {
  EXPECT_EQ(sf::bessel_j(0, 0.0), 1.0);
  EXPECT_EQ(sf::bessel_j(3, 0.0), 0.0);
  EXPECT_EQ(sf::spherical_j(0, 0.0), 1.0);
  EXPECT_EQ(sf::spherical_j(2, 0.0), 0.0);
  EXPECT_NEAR(sf::spherical_j_prime(1, 0.0), 1.0 / 3.0, 1e-16);
}

TEST(Specfun, DomainErrors) {
  EXPECT_THROW(sf::bessel_y(0, 0.0), eigenscat::DomainError);
  EXPECT_THROW(sf::bessel_y(1, -1.0), eigenscat::DomainError);
  EXPECT_THROW(sf::bessel_h1(0, 0.0), eigenscat::DomainError);
  EXPECT_THROW(sf::bessel_j(sf::max_cylindrical_order + 1, 1.0), eigenscat::DomainError);
  EXPECT_THROW(sf::spherical_j(-1, 1.0), eigenscat::DomainError);
  EXPECT_THROW(sf::spherical_j(sf::max_spherical_order + 1, 1.0), eigenscat::DomainError);
  EXPECT_THROW(sf::bessel_j(0, std::nan("")), eigenscat::DomainError);
}

TEST(Specfun, SphericalClosedForms) {
  for (double x : {0.2, 0.99, 1.0, 2.0, 7.5, 33.0}) {
    const double s = std::sin(x), c = std::cos(x);
    EXPECT_NEAR(sf::spherical_j(0, x), s / x, 1e-15);
    EXPECT_NEAR(sf::spherical_j(1, x), s / (x * x) - c / x, 1e-14);
    EXPECT_NEAR(sf::spherical_j(2, x), (3.0 / (x * x) - 1.0) * s / x - 3.0 * c / (x * x), 1e-13);
  }
}

TEST(Specfun, SphericalMatchesIntegralRepresentation) {
  for (int l : {1, 3, 6, 12}) {
    for (double x : {0.5, 1.7, 4.0, 16.0}) {
      EXPECT_NEAR(sf::spherical_j(l, x), spherical_integral(l, x), 1e-12) << "l=" << l << " x=" << x;
    }
  }
}

TEST(Specfun, SphericalDerivativeAndParity) {
  const double h = 1e-5;
  for (int l : {0, 1, 2, 5}) {
    for (double x : {0.4, 1.3, 9.0}) {
      const double d = (sf::spherical_j(l, x + h) - sf::spherical_j(l, x - h)) / (2 * h);
      EXPECT_NEAR(sf::spherical_j_prime(l, x), d, 1e-9);
      const double s = (l % 2) ? -1.0 : 1.0;
      EXPECT_DOUBLE_EQ(sf::spherical_j(l, -x), s * sf::spherical_j(l, x));
    }
  }
}
