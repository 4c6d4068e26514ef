#include "kzfront/ed_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace kzfront {

namespace {

int parity_of_state(unsigned b) { return (std::popcount(b) & 1) ? -1 : 1; }

void check_site_count(int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("ed_oracle: n_sites must be in 1..12");
}

void check_sizes(std::span<const double> couplings, std::span<const double> fields) {
  check_site_count(static_cast<int>(fields.size()));
  if (couplings.size() + 1 != fields.size())
    throw std::invalid_argument("ed_oracle: couplings.size() must be fields.size() - 1");
}

/// y += H(couplings, fields) x, matrix-free.
template <typename VecIn, typename VecOut>
void apply_hamiltonian(std::span<const double> couplings, std::span<const double> fields,
                       const VecIn& x, VecOut& y) {
  const int n = static_cast<int>(fields.size());
  const unsigned dim = 1u << n;
  for (unsigned b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (int s = 0; s < n; ++s) diag -= fields[static_cast<std::size_t>(s)] * ((b >> s) & 1u ? -1.0 : 1.0);
    y(b) += diag * x(b);
  }
  for (int s = 0; s + 1 < n; ++s) {
    const unsigned mask = 3u << s;
    const double j = couplings[static_cast<std::size_t>(s)];
    for (unsigned b = 0; b < dim; ++b) y(b ^ mask) -= j * x(b);
  }
}

}  // namespace

DenseSpinSystem ed_build(std::span<const double> couplings, std::span<const double> fields) {
  check_sizes(couplings, fields);
  const int n = static_cast<int>(fields.size());
  const unsigned dim = 1u << n;
  DenseSpinSystem sys;
  sys.n_sites = n;
  sys.hamiltonian = Eigen::MatrixXd::Zero(dim, dim);
  sys.parity_labels.resize(dim);
  for (unsigned b = 0; b < dim; ++b) {
    sys.parity_labels(b) = parity_of_state(b);
    double diag = 0.0;
    for (int s = 0; s < n; ++s) diag -= fields[static_cast<std::size_t>(s)] * ((b >> s) & 1u ? -1.0 : 1.0);
    sys.hamiltonian(b, b) = diag;
  }
  for (int s = 0; s + 1 < n; ++s) {
    const unsigned mask = 3u << s;
    const double j = couplings[static_cast<std::size_t>(s)];
    for (unsigned b = 0; b < dim; ++b) sys.hamiltonian(b ^ mask, b) -= j;
  }
  return sys;
}

DenseSpinSystem ed_build(const CouplingRealization& couplings, std::span<const double> fields) {
  if (static_cast<int>(fields.size()) != couplings.n_sites)
    throw std::invalid_argument("ed_build: fields.size() must equal n_sites");
  return ed_build({couplings.couplings.data(), couplings.couplings.size()}, fields);
}

SectorEigen ed_sector_eigen(const DenseSpinSystem& sys, int parity) {
  if (parity != 1 && parity != -1) throw std::invalid_argument("ed_sector_eigen: parity must be +-1");
  const Eigen::Index dim = sys.hamiltonian.rows();
  SectorEigen out;
  for (Eigen::Index b = 0; b < dim; ++b) {
    if (sys.parity_labels(b) == parity) out.basis_states.push_back(static_cast<int>(b));
  }
  const Eigen::Index sdim = static_cast<Eigen::Index>(out.basis_states.size());
  Eigen::MatrixXd h(sdim, sdim);
  for (Eigen::Index i = 0; i < sdim; ++i) {
    for (Eigen::Index j = 0; j < sdim; ++j) {
      h(i, j) = sys.hamiltonian(out.basis_states[static_cast<std::size_t>(i)],
                                out.basis_states[static_cast<std::size_t>(j)]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("ed_sector_eigen: eigensolver failed");
  out.values = solver.eigenvalues();
  out.vectors = Eigen::MatrixXd::Zero(dim, sdim);
  for (Eigen::Index i = 0; i < sdim; ++i) {
    out.vectors.row(out.basis_states[static_cast<std::size_t>(i)]) = solver.eigenvectors().row(i);
  }
  return out;
}

Eigen::VectorXd ed_sector_spectrum(const DenseSpinSystem& sys, int parity) {
  return ed_sector_eigen(sys, parity).values;
}

double ed_matrix_element(const DenseSpinSystem& sys, std::span<const double> coeffs,
                         int bra_index, int ket_index, int parity) {
  if (static_cast<int>(coeffs.size()) != sys.n_sites)
    throw std::invalid_argument("ed_matrix_element: coeffs.size() must equal n_sites");
  const SectorEigen sec = ed_sector_eigen(sys, parity);
  const Eigen::VectorXd bra = sec.vectors.col(bra_index);
  const Eigen::VectorXd ket = sec.vectors.col(ket_index);
  double elem = 0.0;
  for (int state : sec.basis_states) {
    double opdiag = 0.0;
    for (int s = 0; s < sys.n_sites; ++s) {
      opdiag += coeffs[static_cast<std::size_t>(s)] *
                ((static_cast<unsigned>(state) >> s) & 1u ? -1.0 : 1.0);
    }
    elem += bra(state) * opdiag * ket(state);
  }
  return elem;
}

std::pair<double, double> ed_ground_energies(const DenseSpinSystem& sys) {
  return {ed_sector_spectrum(sys, +1)(0), ed_sector_spectrum(sys, -1)(0)};
}

int ed_ground_parity(const DenseSpinSystem& sys) {
  const auto [e_plus, e_minus] = ed_ground_energies(sys);
  return e_minus < e_plus ? -1 : 1;
}

Eigen::VectorXcd ed_evolve(std::span<const double> couplings, const FieldsAtTime& fields_at,
                           Eigen::VectorXcd psi0, double t_start, double t_end, double tol) {
  const int n = static_cast<int>(couplings.size()) + 1;
  check_site_count(n);
  std::vector<double> g(static_cast<std::size_t>(n));
  const std::complex<double> minus_i(0.0, -1.0);

  auto rhs = [&](double t, const Eigen::VectorXcd& y) {
    fields_at(t, g);
    Eigen::VectorXcd hy = Eigen::VectorXcd::Zero(y.size());
    apply_hamiltonian(couplings, g, y, hy);
    return Eigen::VectorXcd(minus_i * hy);
  };

  // Dormand-Prince 5(4) tableau.
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  Eigen::VectorXcd y = std::move(psi0);
  double t = t_start;
  const double span = t_end - t_start;
  if (span <= 0.0) return y;
  double h = std::min(0.05, span);
  Eigen::VectorXcd k1 = rhs(t, y);
  int rejected_in_row = 0;
  while (t < t_end) {
    h = std::min(h, t_end - t);
    const Eigen::VectorXcd k2 = rhs(t + a21 * h, y + h * (a21 * k1));
    const Eigen::VectorXcd k3 = rhs(t + 0.3 * h, y + h * (a31 * k1 + a32 * k2));
    const Eigen::VectorXcd k4 = rhs(t + 0.8 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXcd k5 =
        rhs(t + 8.0 / 9.0 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXcd k6 =
        rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::VectorXcd y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::VectorXcd k7 = rhs(t + h, y5);
    const double err =
        (h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7)).norm() /
        std::sqrt(static_cast<double>(y.size()));
    // error-per-unit-time control, so the global error tracks tol * (t_end - t_start)
    const double bound = tol * h;
    if (err <= bound || rejected_in_row > 30) {
      t += h;
      y = y5;
      k1 = k7;  // FSAL
      rejected_in_row = 0;
    } else {
      ++rejected_in_row;
    }
    const double grow = err > 0.0 ? 0.9 * std::pow(bound / err, 0.2) : 5.0;
    h *= std::clamp(grow, 0.2, 5.0);
    if (!(h > 1e-14)) throw std::runtime_error("ed_evolve: step size underflow");
  }
  return y;
}

double ed_overlap(const Eigen::VectorXcd& v1, const Eigen::VectorXcd& v2) {
  return std::norm(v1.dot(v2));
}

double ed_energy(std::span<const double> couplings, std::span<const double> fields,
                 const Eigen::VectorXcd& psi) {
  Eigen::VectorXcd hpsi = Eigen::VectorXcd::Zero(psi.size());
  apply_hamiltonian(couplings, fields, psi, hpsi);
  return psi.dot(hpsi).real();
}

double ed_parity_expectation(const Eigen::VectorXcd& psi) {
  double p = 0.0;
  for (Eigen::Index b = 0; b < psi.size(); ++b) {
    p += parity_of_state(static_cast<unsigned>(b)) * std::norm(psi(b));
  }
  return p;
}

}  // namespace kzfront
