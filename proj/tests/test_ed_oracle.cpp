#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <complex>

#include "kzfront/ed_oracle.hpp"
#include "test_helpers.hpp"

using namespace kzfront;

TEST_CASE("single site is diag(-g, g)") {
  const std::vector<double> none{};
  const std::vector<double> g{3.0};
  const auto sys = ed_build(none, g);
  CHECK(sys.hamiltonian(0, 0) == -3.0);
  CHECK(sys.hamiltonian(1, 1) == 3.0);
  CHECK(sys.hamiltonian(0, 1) == 0.0);
  CHECK(sys.parity_labels(0) == 1);
  CHECK(sys.parity_labels(1) == -1);
}

TEST_CASE("two sites, pure coupling: eigenvalues {-1,-1,1,1}") {
  const std::vector<double> j{1.0};
  const std::vector<double> g{0.0, 0.0};
  const auto sys = ed_build(j, g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(sys.hamiltonian);
  CHECK(s.eigenvalues()(0) == doctest::Approx(-1));
  CHECK(s.eigenvalues()(1) == doctest::Approx(-1));
  CHECK(s.eigenvalues()(2) == doctest::Approx(1));
  CHECK(s.eigenvalues()(3) == doctest::Approx(1));
}

TEST_CASE("hamiltonian is symmetric and block-diagonal over parity") {
  const auto couplings = testing::random_couplings(6, 3);
  const auto g = testing::random_fields(6, 4, 1);
  const auto sys = ed_build(couplings, g);
  CHECK((sys.hamiltonian - sys.hamiltonian.transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (int b = 0; b < sys.hamiltonian.rows(); ++b) {
    for (int c = 0; c < sys.hamiltonian.cols(); ++c) {
      if (sys.parity_labels(b) != sys.parity_labels(c)) {
        REQUIRE(std::abs(sys.hamiltonian(b, c)) < 1e-14);
      }
    }
  }
}

TEST_CASE("sector union equals full spectrum, sector dimension 2^{N-1}") {
  const auto couplings = testing::random_couplings(5, 11);
  const auto g = testing::random_fields(5, 12, 0);
  const auto sys = ed_build(couplings, g);
  const auto sp = ed_sector_spectrum(sys, +1);
  const auto sm = ed_sector_spectrum(sys, -1);
  CHECK(sp.size() == 16);
  CHECK(sm.size() == 16);
  std::vector<double> merged(sp.data(), sp.data() + sp.size());
  merged.insert(merged.end(), sm.data(), sm.data() + sm.size());
  std::sort(merged.begin(), merged.end());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(sys.hamiltonian);
  for (int i = 0; i < 32; ++i) CHECK(merged[static_cast<std::size_t>(i)] == doctest::Approx(full.eigenvalues()(i)));
}

TEST_CASE("sz matrix elements: diagonal, symmetric, parity-preserving") {
  const std::vector<double> none{};
  const std::vector<double> g{3.0};
  const auto sys = ed_build(none, g);
  const std::vector<double> coeff{1.0};
  CHECK(ed_matrix_element(sys, coeff, 0, 0, +1) == doctest::Approx(1.0));   // polarized up
  CHECK(ed_matrix_element(sys, coeff, 0, 0, -1) == doctest::Approx(-1.0));  // polarized down

  const auto couplings = testing::random_couplings(4, 21);
  const auto g4 = testing::random_fields(4, 22, 0);
  const auto sys4 = ed_build(couplings, g4);
  const std::vector<double> c4{0.3, -0.7, 0.1, 0.9};
  const double m01 = ed_matrix_element(sys4, c4, 0, 1, +1);
  const double m10 = ed_matrix_element(sys4, c4, 1, 0, +1);
  CHECK(m01 == doctest::Approx(m10));
}

TEST_CASE("ed_evolve against matrix exponential for constant H") {
  const auto couplings = testing::random_couplings(4, 31);
  const auto g = testing::random_fields(4, 32, 0);
  const auto sys = ed_build(couplings, g);
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(16);
  psi0(3) = std::complex<double>(0.6, 0.0);
  psi0(9) = std::complex<double>(0.0, 0.8);
  const double t = 1.7;
  const auto fields_at = [&g](double, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = g[i];
  };
  const auto psi = ed_evolve(couplings.couplings, fields_at, psi0, 0.0, t);
  // reference: spectral decomposition
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(sys.hamiltonian);
  Eigen::VectorXcd ref = Eigen::VectorXcd::Zero(16);
  for (int k = 0; k < 16; ++k) {
    const std::complex<double> phase = std::exp(std::complex<double>(0.0, -s.eigenvalues()(k) * t));
    ref += phase * s.eigenvectors().col(k) * (s.eigenvectors().col(k).adjoint() * psi0)(0);
  }
  CHECK((psi - ref).norm() < 1e-9);
  CHECK(std::abs(psi.norm() - 1.0) < 1e-9);
  CHECK(ed_energy(couplings.couplings, g, psi) ==
        doctest::Approx(ed_energy(couplings.couplings, g, psi0)).epsilon(1e-9));
}

TEST_CASE("ed_overlap basics") {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(4), b = Eigen::VectorXcd::Zero(4);
  a(0) = 1.0;
  b(1) = 1.0;
  CHECK(ed_overlap(a, a) == doctest::Approx(1.0));
  CHECK(ed_overlap(a, b) == 0.0);
  Eigen::VectorXcd c = (a + b) / std::sqrt(2.0);
  CHECK(ed_overlap(a, c) == doctest::Approx(0.5));
}

TEST_CASE("size limit enforced") {
  std::vector<double> j(12, 1.0), g(13, 1.0);
  CHECK_THROWS_AS(ed_build(j, g), std::invalid_argument);
}
