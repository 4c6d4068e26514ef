#include "kzfront/observables.hpp"

#include <cmath>
#include <vector>

#include "kzfront/pfaffian.hpp"

namespace kzfront {

namespace {

double energy_against(const Eigen::MatrixXd& k, const CouplingRealization& couplings, double g_final) {
  double e = 0.0;
  for (int n = 1; n <= couplings.n_sites; ++n) e += g_final * k(2 * n - 2, 2 * n - 1);
  for (int n = 1; n < couplings.n_sites; ++n)
    e += couplings.couplings[static_cast<std::size_t>(n - 1)] * k(2 * n - 1, 2 * n);
  return e;
}

}  // namespace

double residual_energy(const Eigen::MatrixXd& covariance, const CouplingRealization& couplings,
                       double g_final) {
  const double energy = energy_against(covariance, couplings, g_final);
  double ground;
  if (g_final == 0.0) {
    ground = 0.0;
    for (double j : couplings.couplings) ground -= j;
  } else {
    const std::vector<double> fields(static_cast<std::size_t>(couplings.n_sites), g_final);
    ground = ground_energy(canonical_diagonalize(assemble(couplings, fields)));
  }
  return energy - ground;
}

double kink_density(const Eigen::MatrixXd& covariance, const CouplingRealization& couplings) {
  double acc = 0.0;
  for (int n = 1; n < couplings.n_sites; ++n) acc += 0.5 * (1.0 + covariance(2 * n - 1, 2 * n));
  return acc / static_cast<double>(couplings.n_sites - 1);
}

double gaussian_overlap(const Eigen::MatrixXd& k1, const Eigen::MatrixXd& k2) {
  const auto n = static_cast<double>(k1.rows() / 2);
  const LogPfaffian pf = pfaffian_log(k1 + k2);
  if (pf.sign == 0.0) return 0.0;
  const double overlap = std::exp(pf.log_abs - n * std::log(2.0));
  return std::min(overlap, 1.0);
}

double ground_state_fidelity(const Eigen::MatrixXd& state_covariance,
                             const CouplingRealization& couplings,
                             std::span<const double> final_fields, int sector_parity) {
  auto diag = canonical_diagonalize(assemble(couplings, final_fields));
  diag = fix_parity(std::move(diag), sector_parity);
  return gaussian_overlap(state_covariance, vacuum_covariance(diag));
}

double parity_expectation(const Eigen::MatrixXd& covariance) {
  const auto n = covariance.rows() / 2;
  const LogPfaffian pf = pfaffian_log(covariance);
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return sign * pf.sign * std::exp(pf.log_abs);
}

QuenchResult measure_quench(const EvolutionState& state, const CouplingRealization& couplings,
                            const Schedule& schedule, const MeasureOptions& options) {
  const Eigen::MatrixXd k = covariance_at(state);
  QuenchResult r;
  r.residual_energy = residual_energy(k, couplings, schedule.profile.g_final);
  r.kink_density = kink_density(k, couplings);
  r.parity = parity_expectation(k);
  r.orthogonality_drift = orthogonality_drift(state);
  if (options.with_fidelity) {
    const int sector = r.parity >= 0.0 ? 1 : -1;
    const std::vector<double> fields(static_cast<std::size_t>(couplings.n_sites),
                                     schedule.profile.g_final);
    const double f = ground_state_fidelity(k, couplings, {fields.data(), fields.size()}, sector);
    r.fidelity = f;
    r.fidelity_singular = !(f > 0.0);
  }
  return r;
}

}  // namespace kzfront
