#pragma once

#include <string>
#include <vector>

#include "eigenscat/types.hpp"

namespace eigenscat::oracle {

enum class Family { disk, sphere_te, sphere_tm };

std::string family_name(Family f);

struct Eigenvalue {
  double k = 0.0;
  int index = 0;  // azimuthal m (disk) or spherical degree l
  Family family = Family::disk;
  double bracket = 0.0;  // width of the bracketing grid cell
};

/// Sorted ascending in k.
using EigenvalueList = std::vector<Eigenvalue>;

/// J_m(kR) sqrt(n) k J_m'(sqrt(n) kR) - k J_m'(kR) J_m(sqrt(n) kR).
double disk_determinant(int m, double k, double radius, double n);

/// kR j_l(sqrt(n) kR) j_l'(kR) - sqrt(n) kR j_l(kR) j_l'(sqrt(n) kR).
double sphere_te_determinant(int l, double k, double radius, double n);

/// [j_l(qR) + qR j_l'(qR)] j_l(kR) - n j_l(qR) [j_l(kR) + kR j_l'(kR)], q = sqrt(n) k.
double sphere_tm_determinant(int l, double k, double radius, double n);

/// Transmission eigenvalues of the disk in (k_min, k_max) for 0 <= m <= max_m.
/// Throws InputError on bad parameters and BracketError when an endpoint is a root.
EigenvalueList disk_tev(double radius, double n, double k_min, double k_max, int max_m);

/// TE and TM Maxwell transmission eigenvalues of the ball for 1 <= l <= max_l.
EigenvalueList sphere_maxwell_tev(double radius, double n, double k_min, double k_max, int max_l);

/// Incident-side disk eigenfunction v0 = J_m(k|z|) e^{i m theta} and its
/// interior partner w = c J_m(sqrt(n) k|z|) e^{i m theta}, c = J_m(kR) / J_m(sqrt(n) kR).
class DiskEigenfunction {
 public:
  DiskEigenfunction(double k, int m, double n, double radius);

  cplx value(Point z) const;
  cplx partner(Point z) const;
  /// Radial derivatives at z != 0.
  cplx value_dr(Point z) const;
  cplx partner_dr(Point z) const;

  double wavenumber() const noexcept { return k_; }
  int order() const noexcept { return m_; }
  double partner_coefficient() const noexcept { return c_; }

 private:
  double k_;
  int m_;
  double n_;
  double radius_;
  double c_;
};

}  // namespace eigenscat::oracle
