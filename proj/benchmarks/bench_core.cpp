#include <benchmark/benchmark.h>

#include <random>

#include "eigenscat/forward.hpp"
#include "eigenscat/herglotz.hpp"
#include "eigenscat/lsm.hpp"
#include "eigenscat/modes.hpp"
#include "eigenscat/specfun.hpp"

using namespace eigenscat;

static void BM_BesselJ(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::bessel_j(order, x));
    x = x < 40.0 ? x + 0.37 : 0.5;
  }
}
BENCHMARK(BM_BesselJ)->Arg(0)->Arg(10)->Arg(60);

static void BM_HankelH1(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::bessel_h1(0, x));
    x = x < 40.0 ? x + 0.37 : 0.1;
  }
}
BENCHMARK(BM_HankelH1);

static void BM_DiskSeriesMatrix(benchmark::State& state) {
  const forward::DirectionSet d(static_cast<int>(state.range(0)));
  const forward::DiskSeries s(media::Disk{{0, 0}, 1.0, 16.0}, 1.2);
  for (auto _ : state) benchmark::DoNotOptimize(s.farfield_matrix(d, d));
}
BENCHMARK(BM_DiskSeriesMatrix)->Arg(64)->Arg(128);

static void BM_LsApply(benchmark::State& state) {
  const media::MediumScene square(media::Square{{0, 0}, 1.0, 0.25});
  forward::LsOptions opts;
  opts.cells = static_cast<int>(state.range(0));
  const forward::LippmannSchwinger ls(square, 5.48, opts);
  const Eigen::Index n = static_cast<Eigen::Index>(opts.cells) * opts.cells;
  CVector u = CVector::Random(n);
  CVector y(n);
  for (auto _ : state) {
    ls.apply(u, y);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_LsApply)->Arg(64)->Arg(128)->Arg(256);

static void BM_LsSolve(benchmark::State& state) {
  const media::MediumScene square(media::Square{{0, 0}, 1.0, 0.25});
  forward::LsOptions opts;
  opts.cells = static_cast<int>(state.range(0));
  const forward::LippmannSchwinger ls(square, 5.48, opts);
  for (auto _ : state) benchmark::DoNotOptimize(ls.solve({1.0, 0.0}));
}
BENCHMARK(BM_LsSolve)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

static void BM_Tikhonov(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  CMatrix a(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) a(i, j) = cplx(g(rng), g(rng));
  }
  const forward::DirectionSet d(m);
  const CVector rhs = lsm::test_rhs({0.1, 0.2}, 1.0, d);
  const RVector w = RVector::Constant(m, d.weight());
  for (auto _ : state) benchmark::DoNotOptimize(lsm::tikhonov_solve(a, rhs, 1e-5, w));
}
BENCHMARK(BM_Tikhonov)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

static void BM_FtlsRecovery(benchmark::State& state) {
  const forward::DirectionSet d(64);
  const CMatrix a = forward::DiskSeries(media::Disk{{0, 0}, 1.0, 16.0}, 1.2).farfield_matrix(d, d);
  modes::ModeRecoveryConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(modes::recover_from_matrix(a, 1.2, d, d, cfg));
}
BENCHMARK(BM_FtlsRecovery)->Unit(benchmark::kMillisecond);

static void BM_GramH1(benchmark::State& state) {
  const forward::DirectionSet d(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(herglotz::gram_h1(1.2, d, {{0, 0}, 2.0}));
}
BENCHMARK(BM_GramH1)->Arg(64)->Arg(128);

BENCHMARK_MAIN();
