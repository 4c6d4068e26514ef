#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kzfront/disorder.hpp"
#include "kzfront/drive_profile.hpp"
#include "kzfront/majorana.hpp"

namespace kzfront {

/// Heisenberg-picture frame O(t): a_m(t) = sum_k O(t)_{mk} b_k with b the
/// quasiparticle Majoranas of the initial (parity-fixed) canonical form.
/// O obeys dO/dt = 4 A(t) O, O(t_start) = O_0, and stays orthogonal because
/// every substep is an exact planar rotation.
struct EvolutionState {
  using Frame = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Frame frame;
  double t = 0.0;
  std::int64_t step_count = 0;
  int n_sites = 0;
};

/// Start the evolution in the vacuum of `diag` (the initial ground state;
/// the caller parity-fixes it to the physical sector first).
EvolutionState init_evolution(const CanonicalDiag& diag, double t_start);

/// exp(dt * 4 A_g) applied exactly: rotate row pair (2n-1, 2n) by 2 g_n dt.
void substep_field(EvolutionState& state, std::span<const double> fields, double dt);

/// exp(dt * 4 A_J): rotate row pair (2n, 2n+1) by 2 J_n dt.
void substep_coupling(EvolutionState& state, std::span<const double> couplings, double dt);

using FieldProvider = std::function<void(double t, std::span<double> fields_out)>;

/// One 4th-order step: three symmetric J-g-J sweeps composed with the Suzuki
/// fractal coefficients w1 = 1/(2 - 2^{1/3}), w0 = 1 - 2 w1, the fields of
/// each sweep evaluated at that sweep's midpoint time.
void trotter_step_4(EvolutionState& state, std::span<const double> couplings,
                    const FieldProvider& fields_at, double dt);

struct Checkpoint {
  double t = 0.0;
  double energy = 0.0;
  double orthogonality_drift = 0.0;
  double parity = 0.0;
};

struct EvolveOptions {
  double dt = 0.02;
  /// Every `checkpoint_stride` steps record (t, energy, drift, parity);
  /// 0 disables checkpoints. Each checkpoint costs O(N^2)-O(N^3).
  int checkpoint_stride = 0;
};

struct EvolveReport {
  std::vector<Checkpoint> checkpoints;
  double orthogonality_drift = 0.0;  // at t_end
};

/// Run the full protocol over [t_start, t_end] of the schedule (a trailing
/// partial step covers a non-divisible total time). Throws
/// std::runtime_error on non-finite frame entries.
EvolutionState evolve_quench(const CouplingRealization& couplings, const Schedule& schedule,
                             const EvolveOptions& options = {}, EvolveReport* report = nullptr);

/// K(t) = O(t) Lambda O(t)^T, the imaginary part of <a_m(t) a_n(t)>.
Eigen::MatrixXd covariance_at(const EvolutionState& state);

/// Superdiagonal K(k, k+1) of the covariance, enough for energies and kinks.
Eigen::VectorXd covariance_superdiagonal(const EvolutionState& state);

/// max |O^T O - I|.
double orthogonality_drift(const EvolutionState& state);

/// <H(couplings, fields)> in the evolved state, via the covariance superdiagonal.
double instantaneous_energy(const EvolutionState& state, const CouplingRealization& couplings,
                            std::span<const double> fields);

}  // namespace kzfront
