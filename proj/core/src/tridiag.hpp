#pragma once

// Internal helpers shared by majorana.cpp and spectral.cpp. The chain's
// antisymmetric matrix A is tridiagonal, so A^T A splits into two symmetric
// tridiagonal blocks living on the odd / even Majorana sublattices. All
// static solves reduce to those N x N blocks.

#include <Eigen/Dense>
#include <span>

namespace kzfront::detail {

struct TridiagBlocks {
  // S_odd acts on components a_1, a_3, ...; S_even on a_2, a_4, ...
  Eigen::VectorXd d_odd, e_odd;    // diagonal (N), off-diagonal (N-1)
  Eigen::VectorXd d_even, e_even;
};

TridiagBlocks schur_blocks(std::span<const double> couplings, std::span<const double> fields);

struct TridiagEigenResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // one column per value; empty when not requested
};

/// Eigenpairs il..iu (1-based, inclusive) of the symmetric tridiagonal
/// (diag, offdiag) via LAPACK's MRRR driver. Throws std::runtime_error with
/// the LAPACK info code on failure.
TridiagEigenResult tridiag_eigen_range(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag,
                                       int il, int iu, bool want_vectors);

/// y = A x for the tridiagonal antisymmetric A with superdiagonal c.
Eigen::VectorXd apply_antisymmetric_tridiag(const Eigen::VectorXd& superdiag, const Eigen::VectorXd& x);

/// Superdiagonal of A from (J, g): interleaved -g_n/2, -J_n/2.
Eigen::VectorXd superdiagonal_of(std::span<const double> couplings, std::span<const double> fields);

}  // namespace kzfront::detail
