#include <benchmark/benchmark.h>

#include "kzfront/majorana.hpp"
#include "kzfront/spectral.hpp"

using namespace kzfront;

static void BM_SpectralPoint(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto couplings = sample_couplings(n, 3, CouplingKind::Disordered);
  FrontProfile profile;
  profile.alpha = 1.0 / 32;
  profile.velocity = 1.0;
  double n_f = 0.37 * n;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_point(couplings, profile, n_f));
    n_f += 0.25;
    if (n_f > 0.6 * n) n_f = 0.37 * n;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SpectralPoint)->Arg(128)->Arg(256)->Arg(512);

static void BM_BulkGapSamples(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto couplings = sample_couplings(n, 3, CouplingKind::Disordered);
  FrontProfile profile;
  profile.alpha = 1.0 / 64;
  profile.velocity = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bulk_gap_samples(couplings, profile));
  }
}
BENCHMARK(BM_BulkGapSamples)->Arg(256);

static void BM_CanonicalDiagonalize(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto couplings = sample_couplings(n, 3, CouplingKind::Disordered);
  const std::vector<double> g(static_cast<std::size_t>(n), 3.0);
  const auto h = assemble(couplings, g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonical_diagonalize(h));
  }
}
BENCHMARK(BM_CanonicalDiagonalize)->Arg(128)->Arg(512)->Arg(1024);
