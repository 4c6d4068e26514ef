#pragma once

#include <Eigen/Dense>
#include <span>

#include "kzfront/disorder.hpp"

namespace kzfront {

/// Quadratic form of the chain Hamiltonian in the Majorana basis a_1..a_2N
/// (two per site): H = a^T (iA) a with A real antisymmetric and tridiagonal,
///   A(2n-2, 2n-1) = -g_n / 2   (field block of site n, 0-based indices),
///   A(2n-1, 2n)   = -J_n / 2   (coupling block of bond n).
/// Antisymmetry is structural: only couplings and fields are stored and the
/// dense matrices are materialized on demand.
struct QuadraticHamiltonian {
  int n_sites = 0;
  Eigen::VectorXd couplings;  // J_1..J_{N-1}
  Eigen::VectorXd fields;     // g_1..g_N

  /// Superdiagonal c of A, length 2N-1: c interleaves -g_n/2 and -J_n/2.
  Eigen::VectorXd superdiagonal() const;
  Eigen::MatrixXd dense() const;
  Eigen::MatrixXd dense_field_part() const;
  Eigen::MatrixXd dense_coupling_part() const;
};

/// Throws std::invalid_argument on length mismatch.
QuadraticHamiltonian assemble(const CouplingRealization& couplings, std::span<const double> fields);
QuadraticHamiltonian assemble(std::span<const double> couplings, std::span<const double> fields);

/// Canonical (Bogoliubov) form: an orthogonal frame O with
///   O^T A O = blockdiag [[0, -eps_n/2], [eps_n/2, 0]],
/// quasiparticle energies eps sorted ascending. The vacuum of the rotated
/// basis is the many-body ground state; its energy is -sum(eps).
///
/// fix_parity may negate eps[0] together with the sign of frame column 2,
/// which moves the frame's vacuum to the lowest state of the opposite fermion
/// parity sector. All downstream formulas (-sum eps, 2(eps1+eps2), Wick
/// contractions through the frame) stay valid verbatim under that bookkeeping.
struct CanonicalDiag {
  int n_sites = 0;
  Eigen::VectorXd eps;    // ascending; eps[0] may be negative after fix_parity
  Eigen::MatrixXd frame;  // O, 2N x 2N; columns (2n-2, 2n-1) hold mode n
  bool parity_fixed = false;

  int n_majorana() const { return 2 * n_sites; }
};

/// Degeneracy threshold: eps below max(eps_max, 1) * kDegenerateEpsTol is
/// treated as an exact zero mode.
inline constexpr double kDegenerateEpsTol = 1e-12;

CanonicalDiag canonical_diagonalize(const QuadraticHamiltonian& h);

/// Fermion parity of the frame's vacuum: det(O) = det(Phi) det(Psi), computed
/// from the odd/even component blocks of the frame.
int vacuum_parity(const CanonicalDiag& diag);

/// Returns a frame whose vacuum has the requested parity. If the input vacuum
/// already matches, the object is returned unchanged (apart from the
/// parity_fixed flag); otherwise column 2 is negated and eps[0] -> -eps[0].
CanonicalDiag fix_parity(CanonicalDiag diag, int target_parity);

/// Energy of the frame's vacuum, -sum(eps).
double ground_energy(const CanonicalDiag& diag);

/// Imaginary part K of the vacuum two-point function, Gamma = I + iK with
/// Gamma(m,n) = <a_m a_n>: K = O Lambda O^T, Lambda = blockdiag [[0,-1],[1,0]].
/// Sign convention pinned by <sigma^z> = +1 for a single spin in a field g > 0.
Eigen::MatrixXd vacuum_covariance(const CanonicalDiag& diag);

/// Lambda factor above; also the b-basis covariance of the vacuum itself.
Eigen::MatrixXd covariance_block_factor(int n_sites);

/// <sigma^z_n> from a covariance imaginary part K (site n is 1-based).
double site_sz_expectation(const Eigen::MatrixXd& k, int site);

/// <sigma^x_n sigma^x_{n+1}> from K (bond n is 1-based).
double bond_xx_expectation(const Eigen::MatrixXd& k, int bond);

/// <H> = tr(A K) evaluated through the tridiagonal structure of A.
double energy_expectation(const QuadraticHamiltonian& h, const Eigen::MatrixXd& k);

}  // namespace kzfront
