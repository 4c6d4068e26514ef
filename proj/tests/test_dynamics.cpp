#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "kzfront/dynamics.hpp"
#include "kzfront/ed_oracle.hpp"
#include "kzfront/observables.hpp"
#include "test_helpers.hpp"

using namespace kzfront;

namespace {

CanonicalDiag ground_frame(const CouplingRealization& couplings, const std::vector<double>& fields) {
  auto diag = canonical_diagonalize(assemble(couplings, fields));
  const int sector = vacuum_parity(diag);
  return fix_parity(std::move(diag), sector);
}

FieldProvider constant_fields(std::vector<double> g) {
  return [g = std::move(g)](double, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = g[i];
  };
}

}  // namespace

TEST_CASE("initial state reproduces the vacuum") {
  const auto couplings = testing::random_couplings(6, 11);
  const std::vector<double> g(6, 3.0);
  const auto diag = ground_frame(couplings, g);
  const auto state = init_evolution(diag, 0.0);
  CHECK((covariance_at(state) - vacuum_covariance(diag)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(instantaneous_energy(state, couplings, g) == doctest::Approx(ground_energy(diag)).epsilon(1e-10));
  CHECK(parity_expectation(covariance_at(state)) == doctest::Approx(vacuum_parity(diag)).epsilon(1e-10));
}

TEST_CASE("field substep: identity at g = 0, closed form for one spin") {
  CouplingRealization c;
  c.n_sites = 1;
  c.kind = CouplingKind::Clean;
  const std::vector<double> g{2.3};
  const auto diag = ground_frame(c, g);
  auto state = init_evolution(diag, 0.0);

  const std::vector<double> zeros{0.0};
  const auto before = state.frame;
  substep_field(state, zeros, 0.37);
  CHECK((state.frame - before).cwiseAbs().maxCoeff() == 0.0);

  // many substeps of a constant field compose to one rotation by 2 g t
  const double t = 0.83;
  const int reps = 100;
  for (int k = 0; k < reps; ++k) substep_field(state, g, t / reps);
  const double theta = 2.0 * g[0] * t;
  Eigen::Matrix2d rot;
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  const Eigen::MatrixXd expected = rot * diag.frame;
  CHECK((state.frame - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("coupling substep: identity at J = 0, two-site closed form") {
  CouplingRealization c;
  c.n_sites = 2;
  c.kind = CouplingKind::Clean;
  c.couplings = {1.4};
  const std::vector<double> g{0.7, 1.1};
  const auto diag = ground_frame(c, g);
  auto state = init_evolution(diag, 0.0);

  const std::vector<double> zero_j{0.0};
  const auto before = state.frame;
  substep_coupling(state, zero_j, 0.5);
  CHECK((state.frame - before).cwiseAbs().maxCoeff() == 0.0);

  const double t = 0.61;
  const int reps = 64;
  for (int k = 0; k < reps; ++k) substep_coupling(state, c.couplings, t / reps);
  const double theta = 2.0 * c.couplings[0] * t;
  Eigen::MatrixXd expected = diag.frame;
  const Eigen::VectorXd r1 = expected.row(1), r2 = expected.row(2);
  expected.row(1) = std::cos(theta) * r1 - std::sin(theta) * r2;
  expected.row(2) = std::sin(theta) * r1 + std::cos(theta) * r2;
  CHECK((state.frame - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("orthogonality is preserved to round-off over many substeps") {
  const auto couplings = testing::random_couplings(16, 4);
  const std::vector<double> g = testing::random_fields(16, 5, 0);
  auto state = init_evolution(ground_frame(couplings, g), 0.0);
  for (int k = 0; k < 20000; ++k) {
    substep_field(state, g, 0.02);
    substep_coupling(state, couplings.couplings, 0.02);
  }
  CHECK(orthogonality_drift(state) < 1e-10);
}

TEST_CASE("trotter step against ED: constant Hamiltonian observables") {
  const auto couplings = testing::random_couplings(4, 8);
  const std::vector<double> g_start = testing::random_fields(4, 9, 0);
  const std::vector<double> g_run = testing::random_fields(4, 10, 0);

  auto state = init_evolution(ground_frame(couplings, g_start), 0.0);
  const double t_final = 2.7;
  const int steps = 2700;
  const auto provider = constant_fields(g_run);
  for (int k = 0; k < steps; ++k) trotter_step_4(state, couplings.couplings, provider, t_final / steps);

  // ED reference: evolve the sector ground state of g_start under g_run
  const auto sec = ed_sector_eigen(ed_build(couplings, g_start),
                                   ed_ground_parity(ed_build(couplings, g_start)));
  Eigen::VectorXcd psi = sec.vectors.col(0).cast<std::complex<double>>();
  const auto fields_at = [&g_run](double, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = g_run[i];
  };
  psi = ed_evolve(couplings.couplings, fields_at, psi, 0.0, t_final);

  CHECK(instantaneous_energy(state, couplings, g_run) ==
        doctest::Approx(ed_energy(couplings.couplings, g_run, psi)).epsilon(1e-8));
  const auto k_cov = covariance_at(state);
  for (int s = 1; s <= 4; ++s) {
    double ed_sz = 0.0;
    for (int b = 0; b < psi.size(); ++b) {
      ed_sz += std::norm(psi(b)) * ((static_cast<unsigned>(b) >> (s - 1)) & 1u ? -1.0 : 1.0);
    }
    CHECK(std::abs(site_sz_expectation(k_cov, s) - ed_sz) < 1e-8);
  }
}

TEST_CASE("fourth-order convergence of a time-dependent sweep") {
  const auto couplings = testing::random_couplings(4, 14);
  const std::vector<double> g0 = testing::random_fields(4, 15, 0);
  const double t_final = 1.5;
  auto fields_of_t = [&g0](double t, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = g0[i] + 0.8 * std::sin(1.3 * t + 0.2);
  };

  // dt -> 0 reference by Richardson: use the ED integrator
  const auto sec = ed_sector_eigen(ed_build(couplings, g0), ed_ground_parity(ed_build(couplings, g0)));
  Eigen::VectorXcd psi = sec.vectors.col(0).cast<std::complex<double>>();
  psi = ed_evolve(couplings.couplings, fields_of_t, psi, 0.0, t_final, 1e-12);
  std::vector<double> g_end(4);
  fields_of_t(t_final, g_end);
  const double e_ref = ed_energy(couplings.couplings, g_end, psi);

  std::vector<double> errs;
  for (double dt : {0.05, 0.025, 0.0125}) {
    auto state = init_evolution(ground_frame(couplings, g0), 0.0);
    const auto steps = static_cast<int>(std::round(t_final / dt));
    for (int k = 0; k < steps; ++k) trotter_step_4(state, couplings.couplings, fields_of_t, dt);
    errs.push_back(std::abs(instantaneous_energy(state, couplings, g_end) - e_ref));
  }
  // halving dt cuts the global error by ~16
  CHECK(errs[0] / errs[1] == doctest::Approx(16.0).epsilon(0.35));
  CHECK(errs[1] / errs[2] == doctest::Approx(16.0).epsilon(0.35));
}

TEST_CASE("full quench against ED evolution, N = 6") {
  const auto couplings = testing::random_couplings(6, 23);
  FrontProfile profile;
  profile.alpha = 0.5;
  profile.velocity = 0.5;
  const auto schedule = schedule_for(6, profile);

  EvolveOptions opt;
  opt.dt = 0.005;
  EvolveReport report;
  const auto state = evolve_quench(couplings, schedule, opt, &report);
  CHECK(report.orthogonality_drift < 1e-10);
  CHECK(state.t == doctest::Approx(schedule.t_end).epsilon(1e-9));

  const std::vector<double> g_init(6, profile.g_init);
  const auto sec = ed_sector_eigen(ed_build(couplings, g_init),
                                   ed_ground_parity(ed_build(couplings, g_init)));
  Eigen::VectorXcd psi = sec.vectors.col(0).cast<std::complex<double>>();
  const auto fields_at = [&schedule](double t, std::span<double> out) {
    fields_at_time(schedule, t, out);
  };
  psi = ed_evolve(couplings.couplings, fields_at, psi, schedule.t_start, schedule.t_end);

  std::vector<double> g_end(6, profile.g_final);
  CHECK(std::abs(instantaneous_energy(state, couplings, g_end) -
                 ed_energy(couplings.couplings, g_end, psi)) < 1e-7);
  CHECK(std::abs(parity_expectation(covariance_at(state)) - ed_parity_expectation(psi)) < 1e-8);
}

TEST_CASE("sudden quench limit: state unchanged") {
  const auto couplings = testing::random_couplings(8, 33);
  FrontProfile profile;
  profile.alpha = 0.5;
  profile.velocity = 2000.0;  // T = 8/2000 + 6/2000: effectively instantaneous
  const auto schedule = schedule_for(8, profile);
  EvolveOptions opt;
  opt.dt = schedule.total_time() / 8.0;
  const auto state = evolve_quench(couplings, schedule, opt);

  const std::vector<double> g_init(8, profile.g_init);
  const auto diag = ground_frame(couplings, g_init);
  // Q equals <H_final> - E_gs evaluated in the initial ground state
  const auto k0 = vacuum_covariance(diag);
  const auto kT = covariance_at(state);
  double e0 = 0.0, eT = 0.0;
  for (int b = 1; b < 8; ++b) {
    e0 -= couplings.couplings[static_cast<std::size_t>(b - 1)] * bond_xx_expectation(k0, b);
    eT -= couplings.couplings[static_cast<std::size_t>(b - 1)] * bond_xx_expectation(kT, b);
  }
  CHECK(std::abs(e0 - eT) < 5e-3);  // short but finite ramp
}

TEST_CASE("checkpoints record conserved parity and bounded drift") {
  const auto couplings = testing::random_couplings(12, 41);
  FrontProfile profile;
  profile.alpha = 0.25;
  profile.velocity = 1.0;
  const auto schedule = schedule_for(12, profile);
  EvolveOptions opt;
  opt.dt = 0.02;
  opt.checkpoint_stride = 200;
  EvolveReport report;
  evolve_quench(couplings, schedule, opt, &report);
  REQUIRE(report.checkpoints.size() > 3);
  for (const auto& cp : report.checkpoints) {
    CHECK(std::abs(cp.parity - report.checkpoints.front().parity) < 1e-8);
    CHECK(cp.orthogonality_drift < 1e-8);
    // instantaneous energy never dips below the instantaneous ground energy
    std::vector<double> g(12);
    fields_at_time(schedule, cp.t, g);
    const double floor = ground_energy(canonical_diagonalize(assemble(couplings, g)));
    CHECK(cp.energy >= floor - 1e-9);
  }
}

TEST_CASE("dt validation") {
  const auto couplings = testing::random_couplings(4, 2);
  FrontProfile profile;
  profile.alpha = 0.5;
  profile.velocity = 1.0;
  const auto schedule = schedule_for(4, profile);
  EvolveOptions opt;
  opt.dt = 0.0;
  CHECK_THROWS_AS(evolve_quench(couplings, schedule, opt), std::invalid_argument);
}
