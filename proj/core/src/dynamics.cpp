#include "kzfront/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kzfront/observables.hpp"
#include "tridiag.hpp"

namespace kzfront {

namespace {

constexpr double kW1 = 1.3512071919596578;  // 1 / (2 - 2^{1/3})
constexpr double kW0 = 1.0 - 2.0 * kW1;

/// Rotate rows (r, r+1) of the row-major frame by angle theta.
inline void rotate_pair(EvolutionState::Frame& o, Eigen::Index r, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  double* __restrict a = o.data() + r * o.cols();
  double* __restrict b = a + o.cols();
  const Eigen::Index m = o.cols();
  for (Eigen::Index j = 0; j < m; ++j) {
    const double x = a[j], y = b[j];
    a[j] = c * x - s * y;
    b[j] = s * x + c * y;
  }
}

}  // namespace

EvolutionState init_evolution(const CanonicalDiag& diag, double t_start) {
  EvolutionState s;
  s.n_sites = diag.n_sites;
  s.frame = diag.frame;
  s.t = t_start;
  s.step_count = 0;
  return s;
}

void substep_field(EvolutionState& state, std::span<const double> fields, double dt) {
  for (int n = 0; n < state.n_sites; ++n) {
    const double g = fields[static_cast<std::size_t>(n)];
    if (g != 0.0) rotate_pair(state.frame, 2 * n, 2.0 * g * dt);
  }
}

void substep_coupling(EvolutionState& state, std::span<const double> couplings, double dt) {
  for (int n = 0; n + 1 < state.n_sites; ++n) {
    const double j = couplings[static_cast<std::size_t>(n)];
    if (j != 0.0) rotate_pair(state.frame, 2 * n + 1, 2.0 * j * dt);
  }
}

namespace {

/// One symmetric J-g-J sweep over [t0, t0 + h], fields at the midpoint.
/// The leading/trailing J half-angles are passed in so adjacent sweeps can
/// merge their boundary passes.
void sweep_jgj(EvolutionState& state, std::span<const double> couplings,
               const FieldProvider& fields_at, std::vector<double>& scratch, double t0, double h,
               double lead_j, double trail_j) {
  if (lead_j != 0.0) substep_coupling(state, couplings, lead_j);
  fields_at(t0 + 0.5 * h, scratch);
  substep_field(state, {scratch.data(), scratch.size()}, h);
  if (trail_j != 0.0) substep_coupling(state, couplings, trail_j);
}

void step4_impl(EvolutionState& state, std::span<const double> couplings,
                const FieldProvider& fields_at, std::vector<double>& scratch, double dt) {
  const double h1 = kW1 * dt, h0 = kW0 * dt;
  const double t = state.t;
  // J(h1/2) g J((h1+h0)/2) g J((h0+h1)/2) g J(h1/2): boundary J passes merged.
  sweep_jgj(state, couplings, fields_at, scratch, t, h1, 0.5 * h1, 0.5 * (h1 + h0));
  sweep_jgj(state, couplings, fields_at, scratch, t + h1, h0, 0.0, 0.5 * (h0 + h1));
  sweep_jgj(state, couplings, fields_at, scratch, t + h1 + h0, h1, 0.0, 0.5 * h1);
  state.t = t + dt;
  ++state.step_count;
}

}  // namespace

void trotter_step_4(EvolutionState& state, std::span<const double> couplings,
                    const FieldProvider& fields_at, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("trotter_step_4: dt must be > 0");
  std::vector<double> scratch(static_cast<std::size_t>(state.n_sites));
  step4_impl(state, couplings, fields_at, scratch, dt);
}

namespace {

/// Step boundaries: the uniform dt grid plus every time at which a plateau
/// edge crosses a site. The site fields are only piecewise smooth in t; a
/// kink inside a step would silently degrade the product formula to low
/// order, so steps are split there (2N extra steps per sweep).
std::vector<double> step_boundaries(const Schedule& schedule, double dt) {
  const double t0 = schedule.t_start, t1 = schedule.t_end;
  std::vector<double> bounds;
  const auto n_steps = static_cast<std::int64_t>(std::ceil((t1 - t0) / dt - 1e-12));
  bounds.reserve(static_cast<std::size_t>(n_steps) + 2 * static_cast<std::size_t>(schedule.n_sites) + 2);
  for (std::int64_t k = 0; k <= n_steps; ++k) bounds.push_back(std::min(t0 + static_cast<double>(k) * dt, t1));
  if (schedule.mode == DriveMode::Inhomogeneous) {
    const double hw = schedule.profile.half_width();
    const double sm = schedule.profile.smoothing_sites;
    const double v = schedule.profile.velocity;
    for (int n = 1; n <= schedule.n_sites; ++n) {
      for (const double edge : {hw - sm, hw + sm}) {
        for (const double tk : {(n - edge) / v, (n + edge) / v}) {
          if (tk > t0 && tk < t1) bounds.push_back(tk);
        }
      }
    }
  }
  std::sort(bounds.begin(), bounds.end());
  bounds.back() = t1;
  std::vector<double> unique;
  unique.reserve(bounds.size());
  const double tiny = 1e-9 * dt;
  for (double b : bounds) {
    if (unique.empty() || b - unique.back() > tiny) unique.push_back(b);
  }
  return unique;
}

}  // namespace

EvolutionState evolve_quench(const CouplingRealization& couplings, const Schedule& schedule,
                             const EvolveOptions& options, EvolveReport* report) {
  if (!(options.dt > 0.0)) throw std::invalid_argument("evolve_quench: dt must be > 0");
  const std::vector<double> g_init(static_cast<std::size_t>(schedule.n_sites), schedule.profile.g_init);
  auto h0 = assemble(couplings, g_init);
  auto diag = canonical_diagonalize(h0);
  const int sector = vacuum_parity(diag);  // evolve in the vacuum's own sector
  diag = fix_parity(std::move(diag), sector);
  EvolutionState state = init_evolution(diag, schedule.t_start);

  const FieldProvider fields_at = [&schedule](double t, std::span<double> out) {
    fields_at_time(schedule, t, out);
  };
  std::vector<double> scratch(static_cast<std::size_t>(schedule.n_sites));
  std::span<const double> j{couplings.couplings.data(), couplings.couplings.size()};

  const std::vector<double> bounds = step_boundaries(schedule, options.dt);
  const std::size_t n_steps = bounds.size() - 1;
  for (std::size_t k = 0; k < n_steps; ++k) {
    state.t = bounds[k];
    step4_impl(state, j, fields_at, scratch, bounds[k + 1] - bounds[k]);
    if (options.checkpoint_stride > 0 &&
        (k % static_cast<std::size_t>(options.checkpoint_stride) == 0 || k + 1 == n_steps) &&
        report) {
      Checkpoint cp;
      cp.t = state.t;
      fields_at(state.t, scratch);
      cp.energy = instantaneous_energy(state, couplings, {scratch.data(), scratch.size()});
      cp.orthogonality_drift = orthogonality_drift(state);
      cp.parity = parity_expectation(covariance_at(state));
      report->checkpoints.push_back(cp);
    }
  }
  state.t = bounds.back();
  if (!state.frame.allFinite()) throw std::runtime_error("evolve_quench: non-finite frame entries");
  if (report) report->orthogonality_drift = orthogonality_drift(state);
  return state;
}

Eigen::MatrixXd covariance_at(const EvolutionState& state) {
  const int m = 2 * state.n_sites;
  Eigen::MatrixXd ol(m, m);
  for (int jj = 0; jj < state.n_sites; ++jj) {
    ol.col(2 * jj) = state.frame.col(2 * jj + 1);
    ol.col(2 * jj + 1) = -state.frame.col(2 * jj);
  }
  Eigen::MatrixXd k(m, m);
  k.noalias() = ol * state.frame.transpose();
  return k;
}

Eigen::VectorXd covariance_superdiagonal(const EvolutionState& state) {
  const int m = 2 * state.n_sites;
  Eigen::VectorXd out(m - 1);
  for (int r = 0; r + 1 < m; ++r) {
    // K(r, r+1) = sum_j [ O(r, 2j) O(r+1, 2j+1) * (-1) + O(r, 2j+1) O(r+1, 2j) ]
    double acc = 0.0;
    const double* __restrict a = state.frame.data() + static_cast<Eigen::Index>(r) * m;
    const double* __restrict b = a + m;
    for (int jj = 0; jj < m; jj += 2) acc += a[jj + 1] * b[jj] - a[jj] * b[jj + 1];
    out(r) = acc;
  }
  return out;
}

double orthogonality_drift(const EvolutionState& state) {
  const int m = 2 * state.n_sites;
  Eigen::MatrixXd gram(m, m);
  gram.noalias() = state.frame.transpose() * state.frame;
  gram.diagonal().array() -= 1.0;
  return gram.cwiseAbs().maxCoeff();
}

double instantaneous_energy(const EvolutionState& state, const CouplingRealization& couplings,
                            std::span<const double> fields) {
  const Eigen::VectorXd ksd = covariance_superdiagonal(state);
  double e = 0.0;
  for (int n = 1; n <= state.n_sites; ++n) e += fields[static_cast<std::size_t>(n - 1)] * ksd(2 * n - 2);
  for (int n = 1; n < state.n_sites; ++n) e += couplings.couplings[static_cast<std::size_t>(n - 1)] * ksd(2 * n - 1);
  return e;
}

}  // namespace kzfront
