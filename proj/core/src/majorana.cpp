#include "kzfront/majorana.hpp"

#include <cmath>
#include <stdexcept>

#include "kzfront/pfaffian.hpp"
#include "tridiag.hpp"

namespace kzfront {

Eigen::VectorXd QuadraticHamiltonian::superdiagonal() const {
  return detail::superdiagonal_of({couplings.data(), static_cast<std::size_t>(couplings.size())},
                                  {fields.data(), static_cast<std::size_t>(fields.size())});
}

namespace {

Eigen::MatrixXd dense_from_superdiag(const Eigen::VectorXd& c) {
  const Eigen::Index m = c.size() + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index k = 0; k + 1 < m; ++k) {
    a(k, k + 1) = c(k);
    a(k + 1, k) = -c(k);
  }
  return a;
}

}  // namespace

Eigen::MatrixXd QuadraticHamiltonian::dense() const { return dense_from_superdiag(superdiagonal()); }

Eigen::MatrixXd QuadraticHamiltonian::dense_field_part() const {
  Eigen::VectorXd c = superdiagonal();
  for (Eigen::Index k = 1; k < c.size(); k += 2) c(k) = 0.0;
  return dense_from_superdiag(c);
}

Eigen::MatrixXd QuadraticHamiltonian::dense_coupling_part() const {
  Eigen::VectorXd c = superdiagonal();
  for (Eigen::Index k = 0; k < c.size(); k += 2) c(k) = 0.0;
  return dense_from_superdiag(c);
}

QuadraticHamiltonian assemble(std::span<const double> couplings, std::span<const double> fields) {
  if (fields.empty()) throw std::invalid_argument("assemble: fields must be non-empty");
  if (couplings.size() + 1 != fields.size())
    throw std::invalid_argument("assemble: need couplings.size() == fields.size() - 1");
  QuadraticHamiltonian h;
  h.n_sites = static_cast<int>(fields.size());
  h.couplings = Eigen::Map<const Eigen::VectorXd>(couplings.data(), static_cast<Eigen::Index>(couplings.size()));
  h.fields = Eigen::Map<const Eigen::VectorXd>(fields.data(), static_cast<Eigen::Index>(fields.size()));
  return h;
}

QuadraticHamiltonian assemble(const CouplingRealization& couplings, std::span<const double> fields) {
  if (static_cast<int>(fields.size()) != couplings.n_sites)
    throw std::invalid_argument("assemble: fields.size() must equal n_sites");
  return assemble({couplings.couplings.data(), couplings.couplings.size()}, fields);
}

CanonicalDiag canonical_diagonalize(const QuadraticHamiltonian& h) {
  const int n = h.n_sites;
  const auto blocks = detail::schur_blocks({h.couplings.data(), static_cast<std::size_t>(h.couplings.size())},
                                           {h.fields.data(), static_cast<std::size_t>(h.fields.size())});
  const auto odd = detail::tridiag_eigen_range(blocks.d_odd, blocks.e_odd, 1, n, true);
  if (odd.values.size() != n)
    throw std::runtime_error("canonical_diagonalize: eigensolver returned wrong count");

  CanonicalDiag diag;
  diag.n_sites = n;
  diag.eps.resize(n);
  for (int m = 0; m < n; ++m) diag.eps(m) = 2.0 * std::sqrt(std::max(odd.values(m), 0.0));

  const double scale = std::max(diag.eps(n - 1), 1.0);
  const double ztol = kDegenerateEpsTol * scale;
  int n_zero = 0;
  while (n_zero < n && diag.eps(n_zero) <= ztol) ++n_zero;

  Eigen::MatrixXd psi_zero;
  if (n_zero > 0) {
    const auto even = detail::tridiag_eigen_range(blocks.d_even, blocks.e_even, 1, n_zero, true);
    psi_zero = even.vectors;
  }

  const Eigen::VectorXd c = h.superdiagonal();
  diag.frame = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  Eigen::VectorXd phi_full = Eigen::VectorXd::Zero(2 * n);
  for (int m = 0; m < n; ++m) {
    phi_full.setZero();
    for (int i = 0; i < n; ++i) phi_full(2 * i) = odd.vectors(i, m);
    diag.frame.col(2 * m) = phi_full;
    if (diag.eps(m) > ztol) {
      // The partner follows from the first: A phi = (eps/2) psi, and
      // phi^T A psi = -eps/2 < 0 holds automatically for psi = A phi / |A phi|.
      Eigen::VectorXd w = detail::apply_antisymmetric_tridiag(c, phi_full);
      diag.frame.col(2 * m + 1) = w / w.norm();
    } else {
      // Zero mode: the even-sublattice partner comes from the kernel of the
      // even Schur block; the pairing within the kernel is free.
      for (int i = 0; i < n; ++i) diag.frame(2 * i + 1, 2 * m + 1) = psi_zero(i, m);
      diag.eps(m) = 0.0;
    }
  }
  return diag;
}

int vacuum_parity(const CanonicalDiag& diag) {
  const int n = diag.n_sites;
  Eigen::MatrixXd phi(n, n), psi(n, n);
  for (int m = 0; m < n; ++m) {
    for (int i = 0; i < n; ++i) {
      phi(i, m) = diag.frame(2 * i, 2 * m);
      psi(i, m) = diag.frame(2 * i + 1, 2 * m + 1);
    }
  }
  return determinant_sign(phi) * determinant_sign(psi);
}

CanonicalDiag fix_parity(CanonicalDiag diag, int target_parity) {
  if (target_parity != 1 && target_parity != -1)
    throw std::invalid_argument("fix_parity: target must be +1 or -1");
  if (vacuum_parity(diag) != target_parity) {
    diag.frame.col(1) = -diag.frame.col(1);
    diag.eps(0) = -diag.eps(0);
  }
  diag.parity_fixed = true;
  return diag;
}

double ground_energy(const CanonicalDiag& diag) { return -diag.eps.sum(); }

Eigen::MatrixXd covariance_block_factor(int n_sites) {
  Eigen::MatrixXd lambda = Eigen::MatrixXd::Zero(2 * n_sites, 2 * n_sites);
  for (int j = 0; j < n_sites; ++j) {
    lambda(2 * j, 2 * j + 1) = -1.0;
    lambda(2 * j + 1, 2 * j) = 1.0;
  }
  return lambda;
}

Eigen::MatrixXd vacuum_covariance(const CanonicalDiag& diag) {
  const int m = diag.n_majorana();
  Eigen::MatrixXd ol(m, m);
  for (int j = 0; j < diag.n_sites; ++j) {
    ol.col(2 * j) = diag.frame.col(2 * j + 1);
    ol.col(2 * j + 1) = -diag.frame.col(2 * j);
  }
  Eigen::MatrixXd k(m, m);
  k.noalias() = ol * diag.frame.transpose();
  return k;
}

double site_sz_expectation(const Eigen::MatrixXd& k, int site) {
  return -k(2 * site - 2, 2 * site - 1);
}

double bond_xx_expectation(const Eigen::MatrixXd& k, int bond) {
  return -k(2 * bond - 1, 2 * bond);
}

double energy_expectation(const QuadraticHamiltonian& h, const Eigen::MatrixXd& k) {
  const Eigen::VectorXd c = h.superdiagonal();
  double e = 0.0;
  for (Eigen::Index m = 0; m < c.size(); ++m) e += c(m) * k(m, m + 1);
  return -2.0 * e;
}

}  // namespace kzfront
