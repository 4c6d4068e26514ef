#pragma once

#include <cstdint>
#include <vector>

namespace kzfront {

enum class CouplingKind { Disordered, Clean };

/// One quenched-disorder instance of the nearest-neighbor couplings J_n,
/// n = 1..N-1, in units of the global coupling scale (set to 1).
struct CouplingRealization {
  int n_sites = 0;
  std::uint64_t seed = 0;
  CouplingKind kind = CouplingKind::Disordered;
  std::vector<double> couplings;  // size n_sites - 1
};

/// Draw the couplings for (seed, n_sites, kind). Disordered couplings are
/// uniform on the open interval (1/2, 3/2); Clean couplings are exactly 1.
/// Deterministic: the same arguments always give bitwise-identical values.
/// Throws std::invalid_argument for n_sites < 2.
CouplingRealization sample_couplings(int n_sites, std::uint64_t seed, CouplingKind kind);

/// Ensemble critical field g_c with log(g_c) = mean of log(J).
/// Clean: exactly 1. Disordered: closed form exp(3/2 ln(3/2) - 1/2 ln(1/2) - 1).
double critical_field(CouplingKind kind);

/// Monte-Carlo estimate of the disordered g_c from n_samples uniform draws.
/// Throws std::invalid_argument for n_samples < 1.
double critical_field_monte_carlo(std::uint64_t seed, std::int64_t n_samples);

}  // namespace kzfront
