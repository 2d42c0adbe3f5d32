#pragma once

// Bessel-family functions of real argument and integer order.
//
// J_m is evaluated by Miller's backward recurrence normalised with
// J_0 + 2 sum J_2k = 1, which is accurate for every order at once. Y_0 and Y_1
// come from Neumann series in J_2k (x <= 25) or Hankel asymptotics (x > 25);
// higher orders use forward recurrence, which is stable for Y. Spherical j_l
// uses a power series for x < 1 and backward recurrence otherwise.

#include <complex>
#include <span>
#include <vector>

namespace eigenscat::specfun {

inline constexpr int max_cylindrical_order = 200;
inline constexpr int max_spherical_order = 50;

double bessel_j(int order, double x);
double bessel_j_prime(int order, double x);

/// Requires x > 0.
double bessel_y(int order, double x);
double bessel_y_prime(int order, double x);

/// H^(1)_m = J_m + i Y_m; requires x > 0.
std::complex<double> bessel_h1(int order, double x);
std::complex<double> bessel_h1_prime(int order, double x);

/// Fills out[m] = J_m(x) for m = 0..out.size()-1 in one recurrence pass.
void bessel_j_sequence(double x, std::span<double> out);

/// Fills out[m] = Y_m(x) for m = 0..out.size()-1; x > 0.
void bessel_y_sequence(double x, std::span<double> out);

double spherical_j(int order, double x);
double spherical_j_prime(int order, double x);

}  // namespace eigenscat::specfun
