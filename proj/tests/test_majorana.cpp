#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "kzfront/ed_oracle.hpp"
#include "kzfront/majorana.hpp"
#include "kzfront/pfaffian.hpp"
#include "test_helpers.hpp"

using namespace kzfront;

namespace {

Eigen::MatrixXd canonical_blocks(const Eigen::VectorXd& eps) {
  const auto n = eps.size();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index m = 0; m < n; ++m) {
    d(2 * m, 2 * m + 1) = -0.5 * eps(m);
    d(2 * m + 1, 2 * m) = 0.5 * eps(m);
  }
  return d;
}

}  // namespace

TEST_CASE("assemble block structure") {
  SUBCASE("single field block") {
    const std::vector<double> none{};
    const std::vector<double> g{3.0};
    const auto h = assemble(none, g);
    const auto a = h.dense();
    CHECK(a(0, 1) == -1.5);
    CHECK(a(1, 0) == 1.5);
    CHECK(a.rows() == 2);
  }
  SUBCASE("single coupling block") {
    const std::vector<double> j{1.0};
    const std::vector<double> g{0.0, 0.0};
    const auto a = assemble(j, g).dense();
    CHECK(a(1, 2) == -0.5);
    CHECK(a(2, 1) == 0.5);
    CHECK(a.cwiseAbs().sum() == 1.0);  // nothing else
  }
  SUBCASE("split parts add up and are antisymmetric") {
    const auto couplings = testing::random_couplings(6, 1);
    const auto g = testing::random_fields(6, 2, 1);
    const auto h = assemble(couplings, g);
    const auto a = h.dense();
    CHECK((a + a.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((h.dense_field_part() + h.dense_coupling_part() - a).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("shape errors") {
    const std::vector<double> j{1.0};
    const std::vector<double> g{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(assemble(j, g), std::invalid_argument);
  }
}

TEST_CASE("canonical form: orthogonality, block shape, reconstruction") {
  for (std::uint64_t seed = 0; seed < 9; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const auto couplings = testing::random_couplings(n, seed);
    const auto g = testing::random_fields(n, seed + 50, static_cast<int>(seed % 3));
    const auto h = assemble(couplings, g);
    const auto diag = canonical_diagonalize(h);

    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    CHECK((diag.frame.transpose() * diag.frame - id).cwiseAbs().maxCoeff() < 1e-10);

    const Eigen::MatrixXd d = diag.frame.transpose() * h.dense() * diag.frame;
    CHECK((d - canonical_blocks(diag.eps)).cwiseAbs().maxCoeff() < 1e-10);

    // reconstruction: O blockdiag O^T = A
    const Eigen::MatrixXd rec = diag.frame * canonical_blocks(diag.eps) * diag.frame.transpose();
    CHECK((rec - h.dense()).cwiseAbs().maxCoeff() < 1e-10);

    for (Eigen::Index m = 0; m + 1 < diag.eps.size(); ++m) CHECK(diag.eps(m) <= diag.eps(m + 1) + 1e-12);
    CHECK(diag.eps(0) >= -1e-12);
  }
}

TEST_CASE("quasiparticle energies of tiny instances") {
  SUBCASE("N=2, J=1, g=0: eps = {0, 1}") {
    const std::vector<double> j{1.0};
    const std::vector<double> g{0.0, 0.0};
    const auto diag = canonical_diagonalize(assemble(j, g));
    CHECK(diag.eps(0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(diag.eps(1) == doctest::Approx(1.0));
    CHECK(ground_energy(diag) == doctest::Approx(-1.0));
  }
  SUBCASE("N=1, g=3: eps = {3}") {
    const std::vector<double> none{};
    const std::vector<double> g{3.0};
    const auto diag = canonical_diagonalize(assemble(none, g));
    CHECK(diag.eps(0) == doctest::Approx(3.0));
    CHECK(ground_energy(diag) == doctest::Approx(-3.0));
  }
}

TEST_CASE("sector spectra match exact diagonalization for all field kinds") {
  for (int kind = 0; kind < 3; ++kind) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const int n = 3 + static_cast<int>(seed);
      const auto couplings = testing::random_couplings(n, seed * 7 + 1);
      const auto g = testing::random_fields(n, seed * 13 + 2, kind);
      const auto diag = canonical_diagonalize(assemble(couplings, g));
      const int p0 = vacuum_parity(diag);
      const double e0 = ground_energy(diag);
      const auto sys = ed_build(couplings, g);

      for (int parity : {+1, -1}) {
        std::vector<double> model;
        for (unsigned occ = 0; occ < (1u << n); ++occ) {
          int flips = 0;
          double e = e0;
          for (int m = 0; m < n; ++m) {
            if ((occ >> m) & 1u) {
              ++flips;
              e += 2.0 * diag.eps(m);
            }
          }
          if (p0 * (flips % 2 == 0 ? 1 : -1) == parity) model.push_back(e);
        }
        std::sort(model.begin(), model.end());
        const auto ed = ed_sector_spectrum(sys, parity);
        REQUIRE(static_cast<Eigen::Index>(model.size()) == ed.size());
        for (Eigen::Index i = 0; i < ed.size(); ++i) {
          REQUIRE(model[static_cast<std::size_t>(i)] == doctest::Approx(ed(i)).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("vacuum parity agrees with exact diagonalization") {
  SUBCASE("polarized single spin") {
    const std::vector<double> none{};
    const std::vector<double> g{3.0};
    CHECK(vacuum_parity(canonical_diagonalize(assemble(none, g))) == 1);
  }
  SUBCASE("deep paramagnet N=2") {
    const std::vector<double> j{1.0};
    const std::vector<double> g{3.0, 3.0};
    CHECK(vacuum_parity(canonical_diagonalize(assemble(j, g))) == 1);
  }
  SUBCASE("random instances, nondegenerate") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const int n = 2 + static_cast<int>(seed % 6);
      const auto couplings = testing::random_couplings(n, seed + 3);
      const auto g = testing::random_fields(n, seed + 90, 1);  // mixed signs
      const auto diag = canonical_diagonalize(assemble(couplings, g));
      if (diag.eps(0) < 1e-8) continue;  // degenerate vacua have no unique parity
      const auto sys = ed_build(couplings, g);
      CHECK(vacuum_parity(diag) == ed_ground_parity(sys));
    }
  }
}

TEST_CASE("fix_parity flips the sector and preserves orthogonality") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = 4;
    const auto couplings = testing::random_couplings(n, seed + 40);
    const auto g = testing::random_fields(n, seed + 41, 1);
    const auto diag = canonical_diagonalize(assemble(couplings, g));
    const int p0 = vacuum_parity(diag);

    const auto same = fix_parity(diag, p0);
    CHECK((same.eps - diag.eps).cwiseAbs().maxCoeff() == 0.0);
    CHECK((same.frame - diag.frame).cwiseAbs().maxCoeff() == 0.0);
    CHECK(same.parity_fixed);

    const auto flipped = fix_parity(diag, -p0);
    CHECK(vacuum_parity(flipped) == -p0);
    CHECK(flipped.eps(0) == -diag.eps(0));
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    CHECK((flipped.frame.transpose() * flipped.frame - id).cwiseAbs().maxCoeff() < 1e-12);

    // the flipped vacuum's energy is the opposite sector's ED ground energy
    const auto sys = ed_build(couplings, g);
    const auto [ep, em] = ed_ground_energies(sys);
    const double expected = -p0 == 1 ? ep : em;
    CHECK(ground_energy(flipped) == doctest::Approx(expected).epsilon(1e-9));

    // double application is idempotent
    const auto twice = fix_parity(flipped, -p0);
    CHECK((twice.frame - flipped.frame).cwiseAbs().maxCoeff() == 0.0);

    // fixing back restores magnitudes
    const auto back = fix_parity(flipped, p0);
    CHECK((back.frame.cwiseAbs() - diag.frame.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("vacuum covariance against exact diagonalization") {
  SUBCASE("diagonal is exactly one in Gamma = I + iK, i.e. K diagonal vanishes") {
    const auto couplings = testing::random_couplings(5, 77);
    const auto g = testing::random_fields(5, 78, 0);
    const auto k = vacuum_covariance(canonical_diagonalize(assemble(couplings, g)));
    CHECK(k.diagonal().cwiseAbs().maxCoeff() < 1e-12);
    CHECK((k + k.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("polarized single spin: <sz> = +1") {
    const std::vector<double> none{};
    const std::vector<double> g{3.0};
    const auto k = vacuum_covariance(canonical_diagonalize(assemble(none, g)));
    CHECK(site_sz_expectation(k, 1) == doctest::Approx(1.0));
  }
  SUBCASE("two-point functions match ED ground-state expectations") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const int n = 6;
      const auto couplings = testing::random_couplings(n, seed + 60);
      const auto g = testing::random_fields(n, seed + 61, seed == 2 ? 1 : 0);
      auto diag = canonical_diagonalize(assemble(couplings, g));
      const int p0 = vacuum_parity(diag);
      const auto k = vacuum_covariance(diag);
      const auto sec = ed_sector_eigen(ed_build(couplings, g), p0);
      const Eigen::VectorXd v0 = sec.vectors.col(0);
      const auto sys = ed_build(couplings, g);
      for (int s = 1; s <= n; ++s) {
        double ed_sz = 0.0;
        for (int b = 0; b < v0.size(); ++b) {
          ed_sz += v0(b) * v0(b) * ((static_cast<unsigned>(b) >> (s - 1)) & 1u ? -1.0 : 1.0);
        }
        REQUIRE(std::abs(site_sz_expectation(k, s) - ed_sz) < 1e-10);
      }
      // energy through the covariance
      CHECK(energy_expectation(assemble(couplings, g), k) ==
            doctest::Approx(sec.values(0)).epsilon(1e-10));
      REQUIRE(sys.n_sites == n);
    }
  }
  SUBCASE("parity from the covariance pfaffian") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const int n = 2 + static_cast<int>(seed);
      const auto couplings = testing::random_couplings(n, seed + 70);
      const auto g = testing::random_fields(n, seed + 71, 1);
      const auto diag = canonical_diagonalize(assemble(couplings, g));
      const auto k = vacuum_covariance(diag);
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      CHECK(sign * pfaffian(k) == doctest::Approx(vacuum_parity(diag)).epsilon(1e-9));
    }
  }
}

TEST_CASE("degenerate vacuum (leading zero fields) keeps the frame orthogonal") {
  const auto couplings = testing::random_couplings(8, 5);
  const auto g = testing::random_fields(8, 6, 2);  // zeros on the first sites
  const auto h = assemble(couplings, g);
  const auto diag = canonical_diagonalize(h);
  CHECK(diag.eps(0) == 0.0);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(16, 16);
  CHECK((diag.frame.transpose() * diag.frame - id).cwiseAbs().maxCoeff() < 1e-10);
  const Eigen::MatrixXd d = diag.frame.transpose() * h.dense() * diag.frame;
  CHECK((d - canonical_blocks(diag.eps)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("N=8 sector spectra reconstruct full exact diagonalization") {
  const auto couplings = testing::random_couplings(8, 123);
  const auto g = testing::random_fields(8, 124, 0);
  const auto diag = canonical_diagonalize(assemble(couplings, g));
  const int p0 = vacuum_parity(diag);
  const double e0 = ground_energy(diag);
  const auto sys = ed_build(couplings, g);
  for (int parity : {+1, -1}) {
    std::vector<double> model;
    for (unsigned occ = 0; occ < 256u; ++occ) {
      int flips = 0;
      double e = e0;
      for (int m = 0; m < 8; ++m) {
        if ((occ >> m) & 1u) {
          ++flips;
          e += 2.0 * diag.eps(m);
        }
      }
      if (p0 * (flips % 2 == 0 ? 1 : -1) == parity) model.push_back(e);
    }
    std::sort(model.begin(), model.end());
    const auto ed = ed_sector_spectrum(sys, parity);
    REQUIRE(static_cast<Eigen::Index>(model.size()) == ed.size());
    double worst = 0.0;
    for (Eigen::Index i = 0; i < ed.size(); ++i) {
      worst = std::max(worst, std::abs(model[static_cast<std::size_t>(i)] - ed(i)));
    }
    CHECK(worst < 1e-9);
  }
}
