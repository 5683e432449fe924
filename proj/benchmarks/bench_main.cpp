#include <benchmark/benchmark.h>

#include "subfourier/subfourier.hpp"

namespace sf = subfourier;

namespace {

void BM_PairOverlap(benchmark::State& state) {
  sf::PairKey key{1.3, -0.7, 0.4, 2.1, 0.9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::pair_overlap(key));
    key.carrier_b += 1e-9;
  }
}
BENCHMARK(BM_PairOverlap);

void BM_UncertaintyReportCompass(benchmark::State& state) {
  const auto s = sf::normalize(sf::make_compass(4.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(sf::uncertainty_report(s));
}
BENCHMARK(BM_UncertaintyReportCompass);

void BM_FindDeltaStar(benchmark::State& state) {
  const auto cat = sf::normalize(sf::make_cat(static_cast<double>(state.range(0)), 1.0, 0.0));
  const double k_max = sf::default_k_max(cat);
  for (auto _ : state) benchmark::DoNotOptimize(sf::find_delta_star(cat, k_max));
}
BENCHMARK(BM_FindDeltaStar)->Arg(2)->Arg(4)->Arg(8);

void BM_RegimeScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sf::regime_scan(0.1, 6.0, 1.0, 60));
}
BENCHMARK(BM_RegimeScan)->Unit(benchmark::kMillisecond);

void BM_WignerGrid(benchmark::State& state) {
  const auto s = sf::normalize(sf::make_compass(4.0, 1.0));
  const auto w = sf::wigner_support(s);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sf::wigner_grid(s, w.x_min, w.x_max, n, w.k_min, w.k_max, n));
}
BENCHMARK(BM_WignerGrid)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_QuadratureMoment(benchmark::State& state) {
  const auto cat = sf::normalize(sf::make_cat(3.0, 0.8, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(sf::oracle::numeric_moment(cat, sf::oracle::Moment::P2));
}
BENCHMARK(BM_QuadratureMoment)->Unit(benchmark::kMicrosecond);

void BM_FourierWidths(benchmark::State& state) {
  const auto grid = sf::to_grid(sf::normalize(sf::make_cat(2.0, 1.0, 0.0)), 40.0, 4096);
  for (auto _ : state) benchmark::DoNotOptimize(sf::oracle::discrete_fourier_widths(grid));
}
BENCHMARK(BM_FourierWidths)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
