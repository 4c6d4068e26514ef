#include "kzfront/ensemble.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kzfront/dynamics.hpp"
#include "kzfront/observables.hpp"
#include "kzfront/rng.hpp"

namespace kzfront {

double quantile(std::span<const double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty input");
  if (!(q > 0.0) || q > 1.0) throw std::invalid_argument("quantile: q must be in (0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

std::vector<double> default_theta_bin_edges() {
  std::vector<double> edges(101);
  for (int i = 0; i <= 100; ++i) edges[static_cast<std::size_t>(i)] = -4.0 + 0.05 * i;
  return edges;
}

CollapseHistogram collapse_histogram(std::span<const double> gap_samples, double alpha,
                                     std::span<const double> bin_edges) {
  if (!(alpha > 0.0)) throw std::invalid_argument("collapse_histogram: alpha must be > 0");
  CollapseHistogram h;
  h.alpha = alpha;
  h.bin_edges = bin_edges.empty() ? default_theta_bin_edges()
                                  : std::vector<double>(bin_edges.begin(), bin_edges.end());
  if (h.bin_edges.size() < 2) throw std::invalid_argument("collapse_histogram: need >= 2 bin edges");
  const double scale = std::cbrt(alpha);
  h.samples.reserve(gap_samples.size());
  for (double gap : gap_samples) {
    if (!(gap > 0.0)) {
      ++h.n_rejected;
      continue;
    }
    h.samples.push_back(scale * std::log(gap));
  }
  const std::size_t n_bins = h.bin_edges.size() - 1;
  std::vector<std::int64_t> counts(n_bins, 0);
  std::int64_t in_range = 0;
  for (double theta : h.samples) {
    const auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), theta);
    if (it == h.bin_edges.begin() || it == h.bin_edges.end()) continue;
    ++counts[static_cast<std::size_t>(std::distance(h.bin_edges.begin(), it)) - 1];
    ++in_range;
  }
  h.density.assign(n_bins, 0.0);
  if (in_range > 0) {
    for (std::size_t b = 0; b < n_bins; ++b) {
      const double width = h.bin_edges[b + 1] - h.bin_edges[b];
      h.density[b] = static_cast<double>(counts[b]) / (static_cast<double>(in_range) * width);
    }
  }
  return h;
}

double ks_distance(std::span<const double> sample1, std::span<const double> sample2) {
  if (sample1.empty() || sample2.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::vector<double> a(sample1.begin(), sample1.end());
  std::vector<double> b(sample2.begin(), sample2.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

PowerLawFit powerlaw_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("powerlaw_fit: need >= 2 points");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("powerlaw_fit: data must be positive");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("powerlaw_fit: degenerate abscissae");
  PowerLawFit fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  fit.prefactor = std::exp((sy - fit.exponent * sx) / n);
  const double sst = syy - sy * sy / n;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::log(y[i]) - (std::log(fit.prefactor) + fit.exponent * std::log(x[i]));
    sse += r * r;
  }
  fit.r_squared = sst > 0.0 ? 1.0 - sse / sst : 1.0;
  return fit;
}

LogInverseSquareFit log_inverse_square_fit(std::span<const double> total_times,
                                           std::span<const double> q_density) {
  if (total_times.size() != q_density.size() || total_times.size() < 2)
    throw std::invalid_argument("log_inverse_square_fit: need >= 2 points");
  const auto n = static_cast<double>(total_times.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < total_times.size(); ++i) {
    if (!(total_times[i] > 1.0))
      throw std::invalid_argument("log_inverse_square_fit: times must exceed 1");
    const double lx = std::log(total_times[i]);
    const double xi = 1.0 / (lx * lx);
    sx += xi;
    sy += q_density[i];
    sxx += xi * xi;
    sxy += xi * q_density[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("log_inverse_square_fit: degenerate abscissae");
  LogInverseSquareFit fit;
  fit.a = (n * sxy - sx * sy) / denom;
  fit.b = (sy - fit.a * sx) / n;
  double sse = 0.0;
  for (std::size_t i = 0; i < total_times.size(); ++i) {
    const double lx = std::log(total_times[i]);
    const double r = q_density[i] - (fit.a / (lx * lx) + fit.b);
    sse += r * r;
  }
  fit.rms_residual = std::sqrt(sse / n);
  return fit;
}

PrefactorFit fit_collapse_prefactor(std::span<const double> homogeneous_gaps, int n_sites,
                                    std::span<const double> theta_reference) {
  if (homogeneous_gaps.empty() || theta_reference.empty())
    throw std::invalid_argument("fit_collapse_prefactor: empty samples");
  std::vector<double> logs;
  logs.reserve(homogeneous_gaps.size());
  for (double gap : homogeneous_gaps) {
    if (gap > 0.0) logs.push_back(std::log(gap));
  }
  auto ks_at = [&](double c) {
    std::vector<double> theta(logs.size());
    const double scale = 1.0 / std::sqrt(c * n_sites);
    for (std::size_t i = 0; i < logs.size(); ++i) theta[i] = logs[i] * scale;
    return ks_distance(theta, theta_reference);
  };
  // Golden-section search; the KS objective is piecewise constant, so finish
  // with a fine local sweep around the bracket.
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 0.05, hi = 2.0;
  double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
  double f1 = ks_at(x1), f2 = ks_at(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - golden * (hi - lo);
      f1 = ks_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + golden * (hi - lo);
      f2 = ks_at(x2);
    }
  }
  PrefactorFit best{0.0, std::numeric_limits<double>::infinity()};
  const double center = 0.5 * (lo + hi);
  for (int k = -40; k <= 40; ++k) {
    const double c = center * (1.0 + 0.005 * k);
    if (c <= 0.0) continue;
    const double d = ks_at(c);
    if (d < best.ks_at_c) best = {c, d};
  }
  return best;
}

std::vector<EnsembleResult> landscape(const LandscapeOptions& options) {
  if (options.total_times.empty()) throw std::invalid_argument("landscape: no total_times");
  if (options.n_realizations < 1) throw std::invalid_argument("landscape: n_realizations < 1");
  struct Point {
    double alpha, total_time;
  };
  std::vector<Point> grid;
  for (double t : options.total_times) {
    for (double a : options.alphas) grid.push_back({a, t});
    if (options.include_homogeneous) grid.push_back({0.0, t});
  }
  std::vector<EnsembleResult> results(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    results[p].alpha = grid[p].alpha;
    results[p].total_time = grid[p].total_time;
    results[p].n_sites = options.n_sites;
    results[p].velocity =
        grid[p].alpha > 0.0
            ? velocity_for(options.n_sites, grid[p].alpha, options.g_init, options.g_final,
                           grid[p].total_time)
            : 0.0;
    results[p].residual_energy.resize(static_cast<std::size_t>(options.n_realizations));
    results[p].kink_density.resize(static_cast<std::size_t>(options.n_realizations));
  }

  const auto n_jobs = static_cast<std::int64_t>(grid.size()) * options.n_realizations;
  const int workers = options.workers > 0 ? options.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::int64_t job = 0; job < n_jobs; ++job) {
    const auto p = static_cast<std::size_t>(job / options.n_realizations);
    const auto i = static_cast<std::size_t>(job % options.n_realizations);
    const auto seed = realization_seed(options.base_seed, i);
    const auto couplings = sample_couplings(options.n_sites, seed, options.kind);
    Schedule schedule;
    if (grid[p].alpha > 0.0) {
      FrontProfile profile;
      profile.g_init = options.g_init;
      profile.g_final = options.g_final;
      profile.alpha = grid[p].alpha;
      profile.velocity = results[p].velocity;
      schedule = schedule_for(options.n_sites, profile);
    } else {
      schedule = homogeneous_schedule(options.n_sites, options.g_init, options.g_final,
                                      grid[p].total_time);
    }
    EvolveOptions evolve_options;
    evolve_options.dt = options.dt;
    const EvolutionState state = evolve_quench(couplings, schedule, evolve_options);
    const QuenchResult r = measure_quench(state, couplings, schedule);
    results[p].residual_energy[i] = r.residual_energy;
    results[p].kink_density[i] = r.kink_density;
  }

  for (auto& res : results) {
    for (std::size_t k = 0; k < kQuantileLevels.size(); ++k) {
      res.q_residual[k] = quantile(res.residual_energy, kQuantileLevels[k]);
    }
  }
  return results;
}

}  // namespace kzfront
