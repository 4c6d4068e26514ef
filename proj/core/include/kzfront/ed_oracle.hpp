#pragma once

// Brute-force exact diagonalization on the full 2^N spin Hilbert space.
// Validation infrastructure for the free-fermion pipeline; usable up to
// N = 12 and never part of the large-N simulation path.
//
// Basis convention: state index b has bit (n-1) for site n, bit 0 means
// spin up (sigma^z = +1), bit 1 spin down.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "kzfront/disorder.hpp"

namespace kzfront {

struct DenseSpinSystem {
  int n_sites = 0;
  Eigen::MatrixXd hamiltonian;    // 2^N x 2^N, real symmetric
  Eigen::VectorXi parity_labels;  // +-1 per basis state
};

/// H = -sum J_n sx_n sx_{n+1} - sum g_n sz_n. Throws for n_sites outside 1..12
/// or mismatched array lengths.
DenseSpinSystem ed_build(std::span<const double> couplings, std::span<const double> fields);
DenseSpinSystem ed_build(const CouplingRealization& couplings, std::span<const double> fields);

struct SectorEigen {
  Eigen::VectorXd values;            // ascending
  Eigen::MatrixXd vectors;           // 2^N x dim, embedded in the full space
  std::vector<int> basis_states;     // full-space index per sector column
};

Eigen::VectorXd ed_sector_spectrum(const DenseSpinSystem& sys, int parity);
SectorEigen ed_sector_eigen(const DenseSpinSystem& sys, int parity);

/// <bra| sum_n coeff_n sz_n |ket> between eigenstates bra_index, ket_index
/// (by ascending energy) of the given parity sector.
double ed_matrix_element(const DenseSpinSystem& sys, std::span<const double> coeffs,
                         int bra_index, int ket_index, int parity);

/// Lowest sector energies {E_min(+1), E_min(-1)}.
std::pair<double, double> ed_ground_energies(const DenseSpinSystem& sys);

/// Parity label of the global ground state (+1 on an exact tie).
int ed_ground_parity(const DenseSpinSystem& sys);

using FieldsAtTime = std::function<void(double t, std::span<double> fields_out)>;

/// Schrodinger evolution i d/dt psi = H(t) psi with an adaptive embedded
/// Dormand-Prince 5(4) integrator at the given local tolerance. The
/// Hamiltonian is applied matrix-free from (couplings, fields_at).
Eigen::VectorXcd ed_evolve(std::span<const double> couplings, const FieldsAtTime& fields_at,
                           Eigen::VectorXcd psi0, double t_start, double t_end, double tol = 1e-10);

/// |<v1|v2>|^2.
double ed_overlap(const Eigen::VectorXcd& v1, const Eigen::VectorXcd& v2);

/// <psi| H(couplings, fields) |psi> evaluated matrix-free.
double ed_energy(std::span<const double> couplings, std::span<const double> fields,
                 const Eigen::VectorXcd& psi);

/// <psi| P |psi> with P the global sigma^z parity.
double ed_parity_expectation(const Eigen::VectorXcd& psi);

}  // namespace kzfront
