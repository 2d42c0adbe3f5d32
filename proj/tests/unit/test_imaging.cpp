#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "eigenscat/errors.hpp"
#include "eigenscat/imaging.hpp"
#include "eigenscat/io.hpp"
#include "eigenscat/oracle.hpp"
#include "eigenscat/specfun.hpp"

using namespace eigenscat;
using forward::DirectionSet;
using modes::RecoveredMode;

namespace {

RecoveredMode make_mode(double k, const DirectionSet& d, CVector samples) {
  return RecoveredMode{k, herglotz::HerglotzKernel(k, d, std::move(samples)), 0.0, 1.0, 0.0, {}};
}

// g_j = delta_{j0} / w: v(z) = e^{ik z . d_0}.
RecoveredMode plane_wave_mode(double k, const DirectionSet& d, double scale = 1.0) {
  CVector g = CVector::Zero(d.count());
  g(0) = scale / d.weight();
  return make_mode(k, d, g);
}

// g(theta) = e^{i m theta} / (2 pi i^m): v(z) = J_m(k|z|) e^{i m arg z}.
RecoveredMode bessel_mode(double k, int m, const DirectionSet& d) {
  CVector g(d.count());
  const cplx im = std::pow(I, m);
  for (int j = 0; j < d.count(); ++j) g(j) = std::polar(1.0, m * d.angle(j)) / (2.0 * pi * im);
  return make_mode(k, d, g);
}

RecoveredMode random_mode(double k, const DirectionSet& d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  CVector g(d.count());
  for (int j = 0; j < d.count(); ++j) g(j) = cplx(n(rng), n(rng));
  return make_mode(k, d, g);
}

}  // namespace

TEST(Imaging, UnitMagnitudeGivesZero) {
  const DirectionSet d(16);
  const auto mode = plane_wave_mode(2.0, d);
  for (Point z : {Point{0, 0}, Point{0.4, -1.3}}) EXPECT_NEAR(imaging::indicator_single(mode, z), 0.0, 1e-13);
}

TEST(Imaging, LogarithmIdentities) {
  const DirectionSet d(16);
  const Point z{0.3, 0.1};
  EXPECT_NEAR(imaging::indicator_single(plane_wave_mode(1.0, d, std::exp(-3.0)), z), 3.0, 1e-12);
  std::mt19937_64 rng(1);
  const auto mode = random_mode(1.5, d, rng);
  const double alpha = 7.5;
  const auto scaled = make_mode(1.5, d, alpha * mode.kernel.samples());
  EXPECT_NEAR(imaging::indicator_single(scaled, z), imaging::indicator_single(mode, z) - std::log(alpha), 1e-12);
  const std::vector<RecoveredMode> one{mode};
  EXPECT_NEAR(imaging::indicator_multi(one, z), imaging::indicator_single(mode, z), 1e-14);
  const std::vector<RecoveredMode> twice{mode, mode};
  EXPECT_NEAR(imaging::indicator_multi(twice, z), imaging::indicator_single(mode, z) - std::log(2.0), 1e-12);
  EXPECT_THROW(imaging::indicator_multi(std::vector<RecoveredMode>{}, z), InputError);
}

TEST(Imaging, FloorGuard) {
  const DirectionSet d(16);
  const auto zero = make_mode(1.0, d, CVector::Zero(16));
  EXPECT_EQ(imaging::indicator_single(zero, {0, 0}), -std::log(imaging::magnitude_floor));
}

TEST(Imaging, PermutationInvariantAndMonotone) {
  std::mt19937_64 rng(4);
  const DirectionSet d(20);
  std::vector<RecoveredMode> list{random_mode(1.0, d, rng), random_mode(1.3, d, rng), random_mode(1.7, d, rng)};
  std::vector<RecoveredMode> reversed(list.rbegin(), list.rend());
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int t = 0; t < 20; ++t) {
    const Point z{u(rng), u(rng)};
    const double full = imaging::indicator_multi(list, z);
    EXPECT_NEAR(imaging::indicator_multi(reversed, z), full, 1e-13);
    const std::span<const RecoveredMode> prefix(list.data(), 2);
    EXPECT_LE(full, imaging::indicator_multi(prefix, z));
  }
}

TEST(Imaging, RenderLayoutAndScaleStability) {
  const DirectionSet d(16);
  const std::vector<RecoveredMode> flat{plane_wave_mode(1.0, d)};
  const media::SamplingRegion tiny{{{-1, -1}, {1, 1}}, 2};
  const auto zeros = imaging::render(flat, tiny);
  ASSERT_EQ(zeros.values.size(), 4u);
  for (double v : zeros.values) EXPECT_NEAR(v, 0.0, 1e-13);

  std::mt19937_64 rng(7);
  const auto mode = random_mode(1.2, d, rng);
  const media::SamplingRegion region{{{-1.5, -1.0}, {1.5, 1.2}}, 33};
  const auto grid = imaging::render(std::vector<RecoveredMode>{mode}, region);
  ASSERT_EQ(grid.values.size(), 33u * 33u);
  EXPECT_NEAR(grid.at(4, 9), imaging::indicator_single(mode, region.point(4, 9)), 1e-14);
  const auto scaled =
      imaging::render(std::vector<RecoveredMode>{make_mode(1.2, d, 3.0 * mode.kernel.samples())}, region);
  const auto argmax = [](const std::vector<double>& v) { return std::max_element(v.begin(), v.end()) - v.begin(); };
  EXPECT_EQ(argmax(grid.values), argmax(scaled.values));
  EXPECT_EQ(imaging::render(std::vector<RecoveredMode>{mode}, region).values, grid.values);
}

TEST(Imaging, AnalyticDiskModesSeparateInterior) {
  const auto roots = oracle::disk_tev(1.0, 16.0, 0.5, 3.0, 10);
  ASSERT_GE(roots.size(), 3u);
  const DirectionSet d(64);
  std::vector<RecoveredMode> list;
  for (int i = 0; i < 3; ++i) list.push_back(bessel_mode(roots[i].k, roots[i].index, d));
  // The constructed kernel reproduces J_m exactly.
  const Point z{0.3, 0.4};
  EXPECT_NEAR(std::abs(herglotz::eval_wave(list[0].kernel, z)),
              std::abs(specfun::bessel_j(roots[0].index, roots[0].k * 0.5)), 1e-12);
  double inner = 0.0;
  double outer = 0.0;
  int ni = 0;
  int no = 0;
  const media::SamplingRegion region{{{-1.5, -1.5}, {1.5, 1.5}}, 97};
  const auto grid = imaging::render(list, region);
  for (int iy = 0; iy < 97; ++iy) {
    for (int ix = 0; ix < 97; ++ix) {
      const double r = norm(region.point(ix, iy));
      if (r < 0.8) {
        inner += grid.at(ix, iy);
        ++ni;
      } else if (r > 1.05 && r < 1.3) {
        outer += grid.at(ix, iy);
        ++no;
      }
    }
  }
  EXPECT_GT(inner / ni, outer / no);
}

TEST(Imaging, PgmEncoding) {
  media::SamplingRegion region{{{0, 0}, {1, 1}}, 16};
  imaging::ImagingGrid grid{region, std::vector<double>(256)};
  for (int iy = 0; iy < 16; ++iy) {
    for (int ix = 0; ix < 16; ++ix) grid.values[iy * 16 + ix] = iy;
  }
  const std::string pgm = io::encode_pgm(grid, "abc");
  const std::string header = "P5\n# config_hash=abc\n16 16\n255\n";
  ASSERT_EQ(pgm.substr(0, header.size()), header);
  ASSERT_EQ(pgm.size(), header.size() + 256);
  // Top row carries the largest y, normalised to 255.
  EXPECT_EQ(static_cast<unsigned char>(pgm[header.size()]), 255);
  EXPECT_EQ(static_cast<unsigned char>(pgm.back()), 0);
}
