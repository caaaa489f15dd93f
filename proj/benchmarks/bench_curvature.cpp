#include <benchmark/benchmark.h>

#include "kricci/certify.hpp"
#include "kricci/curvature.hpp"
#include "kricci/royden.hpp"

namespace {

void BM_KRicciExtremeAt(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  kricci::Rng rng(1);
  const kricci::BihermitianForm s = kricci::random_bihermitian(n, rng);
  const kricci::HermitianForm h = kricci::random_metric(n, rng);
  const kricci::Vector x = kricci::random_unit_vector(h, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kricci::k_ricci_extreme_at(s, h, (n + 1) / 2, x, kricci::Extreme::max).value);
  }
}
BENCHMARK(BM_KRicciExtremeAt)->Arg(2)->Arg(4)->Arg(8);

void BM_CertifyKRicci(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  kricci::Rng rng(2);
  const kricci::BihermitianForm s = kricci::random_bihermitian(n, rng);
  const kricci::HermitianForm h = kricci::random_metric(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kricci::extremal_k_ricci(s, h, 2, kricci::Direction::upper).extremal_value);
  }
}
BENCHMARK(BM_CertifyKRicci)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_RoydenBruteForce(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  kricci::Rng rng(3);
  const kricci::BihermitianForm s = kricci::random_bihermitian(n, rng);
  const kricci::HermitianForm h = kricci::random_metric(n, rng);
  const kricci::HermitianForm g = kricci::random_metric(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kricci::royden_sum_bruteforce(s, h, g).quartic_sum);
  }
}
BENCHMARK(BM_RoydenBruteForce)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

}  // namespace
