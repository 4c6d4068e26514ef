#include <benchmark/benchmark.h>

#include "kzfront/dynamics.hpp"

using namespace kzfront;

namespace {

EvolutionState make_state(int n) {
  const auto couplings = sample_couplings(n, 7, CouplingKind::Disordered);
  const std::vector<double> g(static_cast<std::size_t>(n), 3.0);
  auto diag = canonical_diagonalize(assemble(couplings, g));
  return init_evolution(diag, 0.0);
}

}  // namespace

static void BM_TrotterStep(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto couplings = sample_couplings(n, 7, CouplingKind::Disordered);
  auto evolution = make_state(n);
  const std::vector<double> g(static_cast<std::size_t>(n), 1.3);
  const FieldProvider provider = [&g](double, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = g[i];
  };
  for (auto _ : state) {
    trotter_step_4(evolution, couplings.couplings, provider, 0.02);
    benchmark::DoNotOptimize(evolution.frame.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TrotterStep)->Arg(64)->Arg(128)->Arg(256)->Arg(512);

static void BM_CovarianceSuperdiagonal(benchmark::State& state) {
  const auto evolution = make_state(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(covariance_superdiagonal(evolution));
  }
}
BENCHMARK(BM_CovarianceSuperdiagonal)->Arg(128)->Arg(512);

BENCHMARK_MAIN();
