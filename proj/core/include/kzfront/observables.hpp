#pragma once

#include <Eigen/Dense>
#include <optional>

#include "kzfront/disorder.hpp"
#include "kzfront/dynamics.hpp"
#include "kzfront/majorana.hpp"

namespace kzfront {

/// Final-state figures of merit of one protocol run. `fidelity` is filled
/// only when requested (it costs a Pfaffian of the summed covariances).
struct QuenchResult {
  double residual_energy = 0.0;  // Q = <H(t_end)> - E_gs
  double kink_density = 0.0;     // misaligned-bond fraction at g_f = 0
  double parity = 0.0;           // <P> of the final state
  std::optional<double> fidelity;
  bool fidelity_singular = false;  // overlap numerically zero
  double orthogonality_drift = 0.0;
};

/// Q from the final covariance. For g_final = 0 the ground energy is -sum J_n;
/// otherwise it comes from the canonical form of the final Hamiltonian.
double residual_energy(const Eigen::MatrixXd& covariance, const CouplingRealization& couplings,
                       double g_final);

/// Mean misaligned-bond fraction, (1/(N-1)) sum_n (1 - <sx_n sx_{n+1}>)/2.
double kink_density(const Eigen::MatrixXd& covariance, const CouplingRealization& couplings);

/// |<ground(final H)|state>|^2 = 2^{-N} |Pf(K_state + K_ground)|, the ground
/// state taken in the parity sector matching `sector_parity`.
double ground_state_fidelity(const Eigen::MatrixXd& state_covariance,
                             const CouplingRealization& couplings,
                             std::span<const double> final_fields, int sector_parity);

/// Overlap of two pure Gaussian states from their covariance imaginary parts.
double gaussian_overlap(const Eigen::MatrixXd& k1, const Eigen::MatrixXd& k2);

/// <P> = (-1)^N Pf(K).
double parity_expectation(const Eigen::MatrixXd& covariance);

struct MeasureOptions {
  bool with_fidelity = false;
};

/// Evaluate all observables of an evolved state against the final Hamiltonian
/// of the schedule.
QuenchResult measure_quench(const EvolutionState& state, const CouplingRealization& couplings,
                            const Schedule& schedule, const MeasureOptions& options = {});

}  // namespace kzfront
