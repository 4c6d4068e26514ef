#include "kzfront/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kzfront/majorana.hpp"
#include "tridiag.hpp"

namespace kzfront {

namespace {

// Two lowest quasiparticle modes in the target parity sector, as full
// 2N-component frame columns (x = odd-sublattice partner, y = even).
// eps1 carries the parity bookkeeping sign.
struct LowModes {
  double eps1 = 0.0, eps2 = 0.0;
  Eigen::VectorXd x1, y1, x2, y2;
};

double eps_upper_bound(const Eigen::VectorXd& c) {
  double m = 0.0;
  for (Eigen::Index k = 0; k + 1 < c.size() + 1; ++k) {
    const double left = k > 0 ? std::abs(c(k - 1)) : 0.0;
    const double right = k < c.size() ? std::abs(c(k)) : 0.0;
    m = std::max(m, left + right);
  }
  return 2.0 * m;
}

LowModes modes_from_diag(const CanonicalDiag& diag) {
  LowModes lm;
  lm.eps1 = diag.eps(0);
  lm.eps2 = diag.eps(1);
  lm.x1 = diag.frame.col(0);
  lm.y1 = diag.frame.col(1);
  lm.x2 = diag.frame.col(2);
  lm.y2 = diag.frame.col(3);
  return lm;
}

// Fallback through the full canonical form with determinant-based parity;
// correct in every degenerate corner, at O(N^3) cost.
LowModes low_modes_full(const CouplingRealization& couplings, const std::vector<double>& fields,
                        int target_parity) {
  const auto diag = fix_parity(canonical_diagonalize(assemble(couplings, fields)), target_parity);
  return modes_from_diag(diag);
}

// Fast path: partial tridiagonal solves. Falls back to the full path when a
// site sits at zero field while on the ramp (parity of the degenerate vacuum
// is then not decidable from the field signs alone).
LowModes low_modes(const CouplingRealization& couplings, const FrontProfile& profile,
                   double front_position, int target_parity) {
  const int n = couplings.n_sites;
  const std::vector<double> fields = fields_at_front(profile, n, front_position);
  const auto blocks = detail::schur_blocks({couplings.couplings.data(), couplings.couplings.size()},
                                           {fields.data(), fields.size()});
  const auto odd = detail::tridiag_eigen_range(blocks.d_odd, blocks.e_odd, 1, 2, true);
  const Eigen::VectorXd c = detail::superdiagonal_of({couplings.couplings.data(), couplings.couplings.size()},
                                                     {fields.data(), fields.size()});
  const double ztol = kDegenerateEpsTol * std::max(eps_upper_bound(c), 1.0);

  LowModes lm;
  lm.eps1 = 2.0 * std::sqrt(std::max(odd.values(0), 0.0));
  lm.eps2 = 2.0 * std::sqrt(std::max(odd.values(1), 0.0));

  const bool degenerate = lm.eps1 <= ztol;
  if (degenerate) {
    const double gtiny = ztol;
    for (int s = 1; s <= n; ++s) {
      const bool on_ramp = field_gradient_at(profile, s, front_position) != 0.0;
      if (on_ramp && std::abs(fields[static_cast<std::size_t>(s - 1)]) <= gtiny) {
        return low_modes_full(couplings, fields, target_parity);
      }
    }
  }

  auto embed_odd = [n](const Eigen::MatrixXd& v, int col) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(2 * n);
    for (int i = 0; i < n; ++i) full(2 * i) = v(i, col);
    return full;
  };
  lm.x1 = embed_odd(odd.vectors, 0);
  lm.x2 = embed_odd(odd.vectors, 1);

  auto partner = [&](const Eigen::VectorXd& x, double eps, int kernel_rank) {
    if (eps > ztol) {
      Eigen::VectorXd w = detail::apply_antisymmetric_tridiag(c, x);
      return Eigen::VectorXd(w / w.norm());
    }
    const auto even = detail::tridiag_eigen_range(blocks.d_even, blocks.e_even, kernel_rank, kernel_rank, true);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(2 * n);
    for (int i = 0; i < n; ++i) full(2 * i + 1) = even.vectors(i, 0);
    return full;
  };
  lm.y1 = partner(lm.x1, lm.eps1, 1);
  lm.y2 = partner(lm.x2, lm.eps2, 2);
  if (lm.eps1 <= ztol) lm.eps1 = 0.0;
  if (lm.eps2 <= ztol) lm.eps2 = 0.0;

  if (!degenerate) {
    // Nondegenerate vacuum: parity is the sign product of the fields
    // (det O = prod eps_n / prod g_n for this chain).
    int parity = 1;
    for (double g : fields) parity = g < 0.0 ? -parity : parity;
    if (parity != target_parity) {
      lm.y1 = -lm.y1;
      lm.eps1 = -lm.eps1;
    }
  }
  // Degenerate vacuum with all zero-field sites off the ramp: gap and mixing
  // element are invariant under the parity flip, so no flip is needed.
  return lm;
}

int initial_ground_parity(const CouplingRealization& couplings, const FrontProfile& profile) {
  const int n = couplings.n_sites;
  if (std::abs(profile.g_init) > 1e-12) {
    return (profile.g_init > 0.0 || n % 2 == 0) ? 1 : -1;
  }
  const std::vector<double> fields(static_cast<std::size_t>(n), profile.g_init);
  return vacuum_parity(canonical_diagonalize(assemble(couplings, fields)));
}

double mixing_from_modes(const LowModes& lm, const CouplingRealization& couplings,
                         const FrontProfile& profile, double front_position) {
  double total = 0.0;
  for (int s = 1; s <= couplings.n_sites; ++s) {
    const double grad = field_gradient_at(profile, s, front_position);
    if (grad == 0.0) continue;
    const double m = lm.x1(2 * s - 2) * lm.y2(2 * s - 1) - lm.x2(2 * s - 2) * lm.y1(2 * s - 1);
    total += grad * m;
  }
  return std::abs(total);
}

}  // namespace

SpectralPoint spectral_point(const CouplingRealization& couplings, const FrontProfile& profile,
                             double front_position) {
  if (couplings.n_sites < 2)
    throw std::invalid_argument("spectral_point: needs n_sites >= 2 (two quasiparticles)");
  const int target = initial_ground_parity(couplings, profile);
  const LowModes lm = low_modes(couplings, profile, front_position, target);
  SpectralPoint p;
  p.front_position = front_position;
  p.gap = 2.0 * (lm.eps1 + lm.eps2);
  p.mixing = mixing_from_modes(lm, couplings, profile, front_position);
  p.threshold = local_threshold(p.gap, p.mixing);
  return p;
}

double gap_at(const CouplingRealization& couplings, const FrontProfile& profile, double front_position) {
  return spectral_point(couplings, profile, front_position).gap;
}

double mixing_at(const CouplingRealization& couplings, const FrontProfile& profile, double front_position) {
  return spectral_point(couplings, profile, front_position).mixing;
}

double local_threshold(double gap, double mixing) {
  if (gap <= 0.0) throw std::domain_error("local_threshold: gap must be positive");
  if (mixing < kMixingFloor) return kUnboundedThreshold;
  return gap * gap / (4.0 * mixing);
}

std::pair<double, double> bulk_window(const FrontProfile& profile, int n_sites,
                                      const ScanOptions& options, CouplingKind kind) {
  const double hw = profile.half_width();
  if (options.bulk_mode == BulkWindowMode::RampContained) {
    return {hw + options.margin_sites, n_sites - hw - options.margin_sites};
  }
  const double gc = critical_field(kind);
  const double mid = 0.5 * (profile.g_init + profile.g_final);
  const double offset = (mid - gc) / profile.alpha;  // n_f - n_c
  const double margin =
      options.margin_sites + options.critical_margin_lengths * std::pow(profile.alpha, -2.0 / 3.0);
  return {1.0 + margin + offset, n_sites - margin + offset};
}

SpectralTrajectory scan_trajectory(const CouplingRealization& couplings, const FrontProfile& profile,
                                   const ScanOptions& options) {
  validate(profile);
  if (couplings.n_sites < 2) throw std::invalid_argument("scan_trajectory: needs n_sites >= 2");
  const int n = couplings.n_sites;
  const double hw = profile.half_width();
  auto [lo, hi] = bulk_window(profile, n, options, couplings.kind);
  lo = std::max(lo, -hw);
  hi = std::min(hi, n + hw);
  if (!(lo <= hi))
    throw std::invalid_argument("scan_trajectory: empty bulk window; reduce margin or half_width");

  const int target = initial_ground_parity(couplings, profile);
  SpectralTrajectory out;
  out.bulk_lo = lo;
  out.bulk_hi = hi;
  out.gap_min = kUnboundedThreshold;
  out.mixing_max = 0.0;
  out.threshold_min = kUnboundedThreshold;

  const double start = -hw;
  const double stop = n + hw;
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / options.grid_step)) + 1;
  out.front_positions.reserve(count);
  out.gap.reserve(count);
  out.mixing.reserve(count);
  out.threshold.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double n_f = start + static_cast<double>(i) * options.grid_step;
    const LowModes lm = low_modes(couplings, profile, n_f, target);
    const double gap = 2.0 * (lm.eps1 + lm.eps2);
    const double mixing = mixing_from_modes(lm, couplings, profile, n_f);
    const double threshold = local_threshold(gap, mixing);
    out.front_positions.push_back(n_f);
    out.gap.push_back(gap);
    out.mixing.push_back(mixing);
    out.threshold.push_back(threshold);
    if (n_f >= lo && n_f <= hi) {
      out.gap_min = std::min(out.gap_min, gap);
      out.mixing_max = std::max(out.mixing_max, mixing);
      if (threshold != kUnboundedThreshold) out.threshold_min = std::min(out.threshold_min, threshold);
    }
  }
  return out;
}

std::vector<double> bulk_gap_samples(const CouplingRealization& couplings, const FrontProfile& profile,
                                     ScanOptions options) {
  validate(profile);
  if (couplings.n_sites < 2) throw std::invalid_argument("bulk_gap_samples: needs n_sites >= 2");
  // Ramps wider than the chain never fit; only the critical region can.
  if (2.0 * profile.half_width() > couplings.n_sites) options.bulk_mode = BulkWindowMode::CriticalCentered;
  const int n = couplings.n_sites;
  auto [lo, hi] = bulk_window(profile, n, options, couplings.kind);
  if (!(lo <= hi)) throw std::invalid_argument("bulk_gap_samples: empty bulk window");

  std::vector<double> gaps;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / options.grid_step)) + 1;
  gaps.reserve(count);
  const bool eigenvalues_only = profile.g_final >= 0.0 && profile.g_init > 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double n_f = lo + static_cast<double>(i) * options.grid_step;
    if (eigenvalues_only) {
      // With g >= 0 everywhere the parity bookkeeping never changes the gap.
      // eps_n = 2 sqrt(mu_n), Delta = 2 (eps_1 + eps_2).
      const std::vector<double> fields = fields_at_front(profile, n, n_f);
      const auto blocks = detail::schur_blocks({couplings.couplings.data(), couplings.couplings.size()},
                                               {fields.data(), fields.size()});
      const auto odd = detail::tridiag_eigen_range(blocks.d_odd, blocks.e_odd, 1, 2, false);
      gaps.push_back(4.0 * (std::sqrt(std::max(odd.values(0), 0.0)) + std::sqrt(std::max(odd.values(1), 0.0))));
    } else {
      gaps.push_back(gap_at(couplings, profile, n_f));
    }
  }
  return gaps;
}

double homogeneous_critical_gap(const CouplingRealization& couplings, double critical_field_value) {
  const std::vector<double> fields(static_cast<std::size_t>(couplings.n_sites), critical_field_value);
  const auto blocks = detail::schur_blocks({couplings.couplings.data(), couplings.couplings.size()},
                                           {fields.data(), fields.size()});
  const auto odd = detail::tridiag_eigen_range(blocks.d_odd, blocks.e_odd, 1, 2, false);
  return 4.0 * (std::sqrt(std::max(odd.values(0), 0.0)) + std::sqrt(std::max(odd.values(1), 0.0)));
}

}  // namespace kzfront
