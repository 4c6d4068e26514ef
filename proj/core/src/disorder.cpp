#include "kzfront/disorder.hpp"

#include <cmath>
#include <stdexcept>

#include "kzfront/rng.hpp"

namespace kzfront {

namespace {

double draw_open_unit(SplitMix64& gen) {
  // Rejects the exact 0 so the mapped coupling stays strictly inside (1/2, 3/2).
  double u = gen.next_double();
  while (u == 0.0) u = gen.next_double();
  return u;
}

}  // namespace

CouplingRealization sample_couplings(int n_sites, std::uint64_t seed, CouplingKind kind) {
  if (n_sites < 2) throw std::invalid_argument("sample_couplings: n_sites must be >= 2");
  CouplingRealization r;
  r.n_sites = n_sites;
  r.seed = seed;
  r.kind = kind;
  r.couplings.resize(static_cast<std::size_t>(n_sites) - 1, 1.0);
  if (kind == CouplingKind::Disordered) {
    SplitMix64 gen(seed);
    for (double& j : r.couplings) j = 0.5 + draw_open_unit(gen);
  }
  return r;
}

double critical_field(CouplingKind kind) {
  if (kind == CouplingKind::Clean) return 1.0;
  // exp of int_{1/2}^{3/2} ln(x) dx = 3/2 ln(3/2) - 1/2 ln(1/2) - 1
  const double mean_log = 1.5 * std::log(1.5) - 0.5 * std::log(0.5) - 1.0;
  return std::exp(mean_log);
}

double critical_field_monte_carlo(std::uint64_t seed, std::int64_t n_samples) {
  if (n_samples < 1) throw std::invalid_argument("critical_field_monte_carlo: n_samples must be >= 1");
  SplitMix64 gen(seed);
  double sum_log = 0.0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    sum_log += std::log(0.5 + draw_open_unit(gen));
  }
  return std::exp(sum_log / static_cast<double>(n_samples));
}

}  // namespace kzfront
