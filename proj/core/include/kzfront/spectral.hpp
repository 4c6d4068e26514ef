#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "kzfront/disorder.hpp"
#include "kzfront/drive_profile.hpp"

namespace kzfront {

/// Local threshold velocity is unbounded where the mixing element vanishes;
/// such points carry this sentinel and are excluded from minima.
inline constexpr double kUnboundedThreshold = std::numeric_limits<double>::infinity();

/// Mixing elements below this are treated as zero when forming gap^2/(4 Omega).
inline constexpr double kMixingFloor = 1e-14;

/// Gap, mixing element and local threshold velocity at one front position,
/// all evaluated in the parity sector of the protocol's initial ground state.
struct SpectralPoint {
  double front_position = 0.0;
  double gap = 0.0;        // Delta = 2 (eps_1 + eps_2), sector-resolved
  double mixing = 0.0;     // Omega = |<0| sum_n g'_n sz_n |1>|
  double threshold = 0.0;  // Delta^2 / (4 Omega)
};

SpectralPoint spectral_point(const CouplingRealization& couplings, const FrontProfile& profile,
                             double front_position);

/// Same-parity gap Delta(n_f). Requires n_sites >= 2.
double gap_at(const CouplingRealization& couplings, const FrontProfile& profile, double front_position);

double mixing_at(const CouplingRealization& couplings, const FrontProfile& profile, double front_position);

/// v_t = Delta^2 / (4 Omega); kUnboundedThreshold when Omega < kMixingFloor.
/// Throws std::domain_error for Delta <= 0.
double local_threshold(double gap, double mixing);

/// How the bulk window (front "well inside" the chain) is defined:
///  - RampContained: the whole linear ramp stays margin_sites away from the ends.
///    Empty when the ramp is wider than the chain.
///  - CriticalCentered: the site at the critical field g_c stays
///    margin_sites + critical_margin_lengths * alpha^{-2/3} away from the
///    ends; usable for ramps wider than the chain, where only the critical
///    region matters. Distribution sampling wants a healing-length pad
///    (default 2 lengths); full-traverse minima such as the threshold
///    velocity want 0.
enum class BulkWindowMode { RampContained, CriticalCentered };

struct ScanOptions {
  double grid_step = 0.25;  // front positions per site: 1/grid_step
  double margin_sites = 4.0;
  BulkWindowMode bulk_mode = BulkWindowMode::RampContained;
  double critical_margin_lengths = 2.0;  // CriticalCentered pad, in alpha^{-2/3} units
};

struct SpectralTrajectory {
  std::vector<double> front_positions;
  std::vector<double> gap;
  std::vector<double> mixing;
  std::vector<double> threshold;
  double bulk_lo = 0.0, bulk_hi = 0.0;  // front-position bounds of the bulk window
  double gap_min = 0.0;                 // min of gap over the bulk window
  double mixing_max = 0.0;              // max of mixing over the bulk window
  double threshold_min = 0.0;           // min of finite thresholds over the bulk window

  bool in_bulk(double front_position) const {
    return front_position >= bulk_lo && front_position <= bulk_hi;
  }
};

/// Scan front positions spanning [-half_width, N + half_width]. Throws
/// std::invalid_argument when the requested bulk window is empty.
SpectralTrajectory scan_trajectory(const CouplingRealization& couplings, const FrontProfile& profile,
                                   const ScanOptions& options = {});

/// Bulk-window bounds on n_f for the given mode (lo > hi means empty).
std::pair<double, double> bulk_window(const FrontProfile& profile, int n_sites,
                                      const ScanOptions& options,
                                      CouplingKind kind = CouplingKind::Disordered);

/// Gap samples on the bulk-window grid only (no mixing element); the cheap
/// kernel behind gap-distribution histograms. Uses CriticalCentered windows
/// unless the options say otherwise.
std::vector<double> bulk_gap_samples(const CouplingRealization& couplings, const FrontProfile& profile,
                                     ScanOptions options = {});

/// Same-parity gap of the uniform-field chain at g = g_c; reference statistic
/// for the homogeneous critical ensemble.
double homogeneous_critical_gap(const CouplingRealization& couplings, double critical_field_value);

}  // namespace kzfront
