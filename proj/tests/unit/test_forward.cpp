#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "eigenscat/errors.hpp"
#include "eigenscat/forward.hpp"
#include "eigenscat/specfun.hpp"

using namespace eigenscat;
using namespace eigenscat::forward;

namespace {

double max_rel(const CMatrix& a, const CMatrix& ref) {
  return (a - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff();
}

// Integral of (i/4) H0(k|y|) over [-h/2, h/2]^2: eight Duffy triangles
// x = a u, y = a u v with u = t^2, midpoint rule in t and v.
cplx self_cell_oracle(double k, double h) {
  const double a = 0.5 * h;
  const int nt = 1000;
  const int nv = 400;
  cplx s = 0.0;
  for (int i = 0; i < nt; ++i) {
    const double t = (i + 0.5) / nt;
    const double u = t * t;
    for (int j = 0; j < nv; ++j) {
      const double v = (j + 0.5) / nv;
      const double r = a * u * std::sqrt(1.0 + v * v);
      const cplx phi = 0.25 * I * specfun::bessel_h1(0, k * r);
      s += phi * (a * a * u) * (2.0 * t);
    }
  }
  return 8.0 * s / (static_cast<double>(nt) * nv);
}

}  // namespace

TEST(Forward, DirectionSet) {
  EXPECT_THROW(DirectionSet(7), InputError);
  const DirectionSet d(16);
  EXPECT_EQ(d.count(), 16);
  EXPECT_NEAR(d.weight(), pi / 8.0, 1e-15);
  EXPECT_NEAR(d.direction(4).x, 0.0, 1e-15);
  EXPECT_NEAR(d.direction(4).y, 1.0, 1e-15);
}

TEST(Forward, NoContrastGivesZero) {
  EXPECT_EQ(disk_farfield(1.0, 1.0, 2.0, {1, 0}, {0, 1}), cplx(0.0));
}

TEST(Forward, DiskRotationalSymmetry) {
  const DiskSeries s(media::Disk{{0, 0}, 1.0, 4.0}, 3.0);
  auto dir = [](double t) { return Point{std::cos(t), std::sin(t)}; };
  for (double t : {0.3, 1.1, 2.5}) {
    const cplx a = s.farfield(dir(t), dir(0.0));
    for (double shift : {0.7, 2.9, 4.4}) {
      EXPECT_NEAR(std::abs(s.farfield(dir(t + shift), dir(shift)) - a), 0.0, 1e-13);
    }
  }
}

TEST(Forward, DiskMatrixMatchesPointwise) {
  const media::Disk disk{{0.2, -0.1}, 0.8, 2.0};
  const DiskSeries s(disk, 2.5);
  const DirectionSet d(12);
  const CMatrix a = s.farfield_matrix(d, d);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      EXPECT_NEAR(std::abs(a(i, j) - s.farfield(d.direction(i), d.direction(j))), 0.0, 1e-13);
    }
  }
}

TEST(Forward, DiskSeriesContinuityAtBoundary) {
  const DiskSeries s(media::Disk{{0, 0}, 1.0, 16.0}, 1.3);
  for (double t : {0.0, 0.9, 2.2}) {
    const Point in{0.999999999 * std::cos(t), 0.999999999 * std::sin(t)};
    const Point out{1.000000001 * std::cos(t), 1.000000001 * std::sin(t)};
    EXPECT_NEAR(std::abs(s.total_field(in, {1, 0}) - s.total_field(out, {1, 0})), 0.0, 1e-6);
  }
}

TEST(Forward, SelfCellIntegralMatchesDuffyQuadrature) {
  for (double k : {0.5, 2.0, 6.0}) {
    for (double h : {0.02, 0.1}) {
      const cplx ref = self_cell_oracle(k, h);
      EXPECT_LT(std::abs(self_cell_integral(k, h) - ref) / std::abs(ref), 1e-6) << "k=" << k << " h=" << h;
    }
  }
}

TEST(Forward, ZeroContrastGridGivesIncidentWave) {
  const int n = 32;
  LippmannSchwinger ls({-1, -1}, 2.0 / n, n, 3.0, std::vector<double>(n * n, 0.0), {});
  const Point d{0.6, 0.8};
  const TotalField u = ls.solve(d);
  double err = 0.0;
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const Point c = u.center(ix, iy);
      err = std::max(err, std::abs(u.at(ix, iy) - std::exp(I * 3.0 * dot(d, c))));
    }
  }
  EXPECT_LT(err, 1e-14);
  EXPECT_EQ(ls.farfield(u, {1, 0}), cplx(0.0));
}

TEST(Forward, LsFarFieldMatchesSeries) {
  const media::Disk disk{{0, 0}, 1.0, 4.0};
  const media::MediumScene scene(disk);
  const DirectionSet d(16);
  LsOptions opts;
  opts.cells = 64;
  opts.richardson = true;
  const CMatrix ls = ls_farfield_matrix(scene, 2.0, d, d, opts);
  const CMatrix series = DiskSeries(disk, 2.0).farfield_matrix(d, d);
  EXPECT_LT(max_rel(ls, series), 1e-3);
}

TEST(Forward, LsInteriorFieldMatchesSeries) {
  const media::Disk disk{{0, 0}, 1.0, 4.0};
  LsOptions opts;
  opts.cells = 128;
  const TotalField u = ls_solve(media::MediumScene(disk), 2.0, {1, 0}, opts);
  const DiskSeries s(disk, 2.0);
  double err = 0.0;
  double scale = 0.0;
  for (int ix = 0; ix < u.cells; ++ix) {
    for (int iy = 0; iy < u.cells; ++iy) {
      const cplx ref = s.total_field(u.center(ix, iy), {1, 0});
      err = std::max(err, std::abs(u.at(ix, iy) - ref));
      scale = std::max(scale, std::abs(ref));
    }
  }
  EXPECT_LT(err / scale, 1e-3);
}

TEST(Forward, SquareReciprocity) {
  const media::MediumScene square(media::Square{{0, 0}, 1.0, 0.25});
  const DirectionSet d(16);
  LsOptions opts;
  opts.cells = 48;
  const CMatrix a = ls_farfield_matrix(square, 5.48, d, d, opts);
  double err = 0.0;
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) err = std::max(err, std::abs(a(i, j) - a((j + 8) % 16, (i + 8) % 16)));
  }
  EXPECT_LT(err / a.cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Forward, SquareSelfConvergenceOrder) {
  const media::MediumScene square(media::Square{{0, 0}, 1.0, 0.25});
  const DirectionSet d(8);
  std::vector<CMatrix> a;
  for (int n : {20, 40, 80}) {
    LsOptions opts;
    opts.cells = n;
    a.push_back(ls_farfield_matrix(square, 5.48, d, d, opts));
    EXPECT_TRUE(a.back().allFinite());
  }
  const double order = std::log2((a[0] - a[1]).norm() / (a[1] - a[2]).norm());
  EXPECT_GE(order, 2.0);
}

TEST(Forward, ResolutionPrecondition) {
  const media::MediumScene disk(media::Disk{{0, 0}, 1.0, 16.0});
  LsOptions opts;
  opts.cells = 16;
  EXPECT_THROW(ls_solve(disk, 3.0, {1, 0}, opts), InputError);
}

TEST(Forward, NoiseLevelExact) {
  const DiskSeries s(media::Disk{{0, 0}, 1.0, 16.0}, 1.2);
  const DirectionSet d(32);
  const CMatrix a = s.farfield_matrix(d, d);
  EXPECT_EQ(add_noise(a, 0.0, 1, 0), a);
  const CMatrix b = add_noise(a, 0.05, 42, 3);
  EXPECT_NEAR((b - a).norm() / a.norm(), 0.05, 1e-12);
  EXPECT_EQ(add_noise(a, 0.05, 42, 3), b);
  EXPECT_NE(add_noise(a, 0.05, 42, 4), b);
  EXPECT_NE(add_noise(a, 0.05, 43, 3), b);
}

TEST(Forward, SynthesizeDeterministic) {
  const media::MediumScene disk(media::Disk{{0, 0}, 1.0, 16.0});
  const DirectionSet d(16);
  const auto x = synthesize(disk, {1.0, 1.1}, d, d, 0.01, 5);
  const auto y = synthesize(disk, {1.0, 1.1}, d, d, 0.01, 5);
  ASSERT_EQ(x.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    ASSERT_TRUE(x.matrices[i] && y.matrices[i]);
    EXPECT_EQ(*x.matrices[i], *y.matrices[i]);
    EXPECT_TRUE(x.status[i].empty());
  }
  EXPECT_THROW(synthesize(disk, {1.0, 1.1}, d, d, 1.0, 5), InputError);
  EXPECT_THROW(synthesize(disk, {1.1, 1.0}, d, d, 0.0, 5), InputError);
}

TEST(Forward, SynthesizeRecordsPerWavenumberFailure) {
  const media::MediumScene square(media::Square{{0, 0}, 1.0, 4.0});
  const DirectionSet d(8);
  SynthesisOptions opts;
  opts.ls.cells = 32;
  const auto data = synthesize(square, {1.0, 20.0}, d, d, 0.0, 1, opts);
  EXPECT_TRUE(data.matrices[0].has_value());
  EXPECT_FALSE(data.matrices[1].has_value());
  EXPECT_FALSE(data.status[1].empty());
  EXPECT_EQ(data.nearest_available(19.0), std::optional<std::size_t>(0));
}
