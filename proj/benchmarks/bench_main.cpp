#include <benchmark/benchmark.h>

#include "virmart/weights.hpp"

namespace {

void BM_krat_arithmetic(benchmark::State& state) {
  using namespace virmart;
  KRat k = KRat::kappa();
  for (auto _ : state) {
    KRat w = weight_hrs(k, 3, 2) * central_charge(k) + weight_hrho(k, -k / KRat(2));
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_krat_arithmetic);

}  // namespace

BENCHMARK_MAIN();
