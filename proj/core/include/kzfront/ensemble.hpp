#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "kzfront/disorder.hpp"

namespace kzfront {

/// Nearest-rank quantile: element of rank ceil(q * count) of the sorted
/// values. Reproducible across platforms (no interpolation). Throws on empty
/// input or q outside (0, 1].
double quantile(std::span<const double> values, double q);

inline constexpr std::array<double, 5> kQuantileLevels = {0.01, 0.05, 0.50, 0.95, 0.99};

/// Rescaled log-gap distribution, theta = alpha^{1/3} ln(gap). Bin edges are
/// shared across alphas so histograms are directly comparable; raw theta
/// samples are kept for distribution distances.
struct CollapseHistogram {
  double alpha = 0.0;
  std::vector<double> samples;
  std::vector<double> bin_edges;
  std::vector<double> density;  // normalized: sum(density * width) == 1
  std::int64_t n_rejected = 0;  // non-positive gaps
};

std::vector<double> default_theta_bin_edges();  // [-4, 1] in 100 bins

CollapseHistogram collapse_histogram(std::span<const double> gap_samples, double alpha,
                                     std::span<const double> bin_edges = {});

/// Two-sample Kolmogorov-Smirnov statistic on raw samples.
double ks_distance(std::span<const double> sample1, std::span<const double> sample2);

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
};

/// Least squares on (ln x, ln y). Requires positive data, >= 2 points.
PowerLawFit powerlaw_fit(std::span<const double> x, std::span<const double> y);

struct LogInverseSquareFit {
  double a = 0.0;  // Q/N ~ a / ln(T)^2 + b
  double b = 0.0;
  double rms_residual = 0.0;
};

/// Diagnostic fit of Q/N = a/ln^2(T) + b; requires T > 1 and >= 2 points.
LogInverseSquareFit log_inverse_square_fit(std::span<const double> total_times,
                                           std::span<const double> q_density);

/// Best prefactor c matching the homogeneous-critical gap distribution under
/// theta = ln(gap)/sqrt(c N) to a reference theta sample, by golden-section
/// search on the KS distance.
struct PrefactorFit {
  double c = 0.0;
  double ks_at_c = 0.0;
};

PrefactorFit fit_collapse_prefactor(std::span<const double> homogeneous_gaps, int n_sites,
                                    std::span<const double> theta_reference);

/// One (alpha, T) grid point of a residual-energy landscape. alpha == 0 marks
/// the homogeneous reference schedule.
struct EnsembleResult {
  double alpha = 0.0;
  double total_time = 0.0;
  double velocity = 0.0;  // 0 for homogeneous
  int n_sites = 0;
  std::vector<double> residual_energy;  // per realization, seed-index order
  std::vector<double> kink_density;
  std::array<double, 5> q_residual{};  // kQuantileLevels of residual_energy
};

struct LandscapeOptions {
  std::vector<double> alphas;
  std::vector<double> total_times;
  bool include_homogeneous = true;
  int n_sites = 128;
  int n_realizations = 100;
  std::uint64_t base_seed = 1;
  double dt = 0.02;
  double g_init = 3.0;
  double g_final = 0.0;
  CouplingKind kind = CouplingKind::Disordered;
  int workers = 0;  // 0: OpenMP default
};

/// Full quench pipeline per (grid point, realization); realizations are
/// scheduled in parallel and folded deterministically by seed index.
std::vector<EnsembleResult> landscape(const LandscapeOptions& options);

}  // namespace kzfront
