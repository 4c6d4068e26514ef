#include "experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "kzfront/disorder.hpp"
#include "kzfront/dynamics.hpp"
#include "kzfront/ed_oracle.hpp"
#include "kzfront/ensemble.hpp"
#include "kzfront/observables.hpp"
#include "kzfront/rng.hpp"
#include "kzfront/spectral.hpp"
#include "output.hpp"

namespace kzfront::harness {

namespace {

namespace fs = std::filesystem;

CouplingKind kind_of(const RunConfig& c) {
  return c.clean ? CouplingKind::Clean : CouplingKind::Disordered;
}

int effective_workers(const RunConfig& c) {
  return c.workers > 0 ? c.workers : omp_get_max_threads();
}

FrontProfile profile_for(const RunConfig& c, double alpha, double velocity) {
  FrontProfile p;
  p.g_init = c.g_init;
  p.g_final = c.g_final;
  p.alpha = alpha;
  p.velocity = velocity;
  p.smoothing_sites = c.smoothing_sites;
  return p;
}

/// The realization record {seed, N, kind, couplings[]} for every ensemble
/// member, one JSON object per line.
void dump_couplings_file(const RunConfig& c) {
  if (!c.dump_couplings) return;
  std::string out;
  for (int i = 0; i < c.n_realizations; ++i) {
    const auto r = sample_couplings(c.n_sites, realization_seed(c.base_seed, i), kind_of(c));
    nlohmann::json record{{"seed", r.seed},
                          {"n_sites", r.n_sites},
                          {"kind", r.kind == CouplingKind::Clean ? "clean" : "disordered"},
                          {"couplings", r.couplings}};
    out += record.dump();
    out += "\n";
  }
  write_file_atomic(fs::path(c.output_dir) / "couplings.json", out);
}

ScanOptions scan_options_for(const RunConfig& c, double alpha) {
  ScanOptions opt;
  opt.grid_step = c.grid_step;
  opt.margin_sites = c.margin_sites;
  opt.critical_margin_lengths = c.critical_margin_lengths;
  if (c.bulk_mode == "ramp") {
    opt.bulk_mode = BulkWindowMode::RampContained;
  } else if (c.bulk_mode == "critical") {
    opt.bulk_mode = BulkWindowMode::CriticalCentered;
  } else {
    // auto: contain the whole ramp when it fits, else track the critical site
    const FrontProfile p = profile_for(c, alpha, 1.0);
    ScanOptions probe;
    probe.grid_step = c.grid_step;
    probe.margin_sites = c.margin_sites;
    const auto [lo, hi] = bulk_window(p, c.n_sites, probe, kind_of(c));
    opt.bulk_mode = lo <= hi ? BulkWindowMode::RampContained : BulkWindowMode::CriticalCentered;
  }
  return opt;
}

// ---------------------------------------------------------------- spectral

int run_spectral_scan(const RunConfig& c, nlohmann::json*) {
  dump_couplings_file(c);
  CsvBuilder trajectory("realization_seed,alpha,n_f,Delta,Omega,v_t");
  CsvBuilder summary("realization_seed,alpha,Delta_min,Omega_max,v_t_min,bulk_lo,bulk_hi");
  const int workers = effective_workers(c);
  for (double alpha : c.alphas) {
    const FrontProfile profile = profile_for(c, alpha, 1.0);
    const ScanOptions opt = scan_options_for(c, alpha);
    std::vector<SpectralTrajectory> per_realization(static_cast<std::size_t>(c.n_realizations));
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int i = 0; i < c.n_realizations; ++i) {
      const auto couplings = sample_couplings(c.n_sites, realization_seed(c.base_seed, i), kind_of(c));
      per_realization[static_cast<std::size_t>(i)] = scan_trajectory(couplings, profile, opt);
    }
    for (int i = 0; i < c.n_realizations; ++i) {
      const auto seed = realization_seed(c.base_seed, i);
      const auto& traj = per_realization[static_cast<std::size_t>(i)];
      for (std::size_t p = 0; p < traj.front_positions.size(); ++p) {
        trajectory.field(seed)
            .field(alpha)
            .field(traj.front_positions[p])
            .field(traj.gap[p])
            .field(traj.mixing[p])
            .field(traj.threshold[p]);
        trajectory.end_row();
      }
      summary.field(seed)
          .field(alpha)
          .field(traj.gap_min)
          .field(traj.mixing_max)
          .field(traj.threshold_min)
          .field(traj.bulk_lo)
          .field(traj.bulk_hi);
      summary.end_row();
    }
  }
  write_file_atomic(fs::path(c.output_dir) / "trajectory.csv", trajectory.text());
  write_file_atomic(fs::path(c.output_dir) / "summary.csv", summary.text());
  return 0;
}

// -------------------------------------------------------------- collapse

std::vector<double> gather_theta(const RunConfig& c, double alpha, std::int64_t* n_gaps) {
  const FrontProfile profile = profile_for(c, alpha, 1.0);
  ScanOptions opt = scan_options_for(c, alpha);
  std::vector<std::vector<double>> slots(static_cast<std::size_t>(c.n_realizations));
  const int workers = effective_workers(c);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (int i = 0; i < c.n_realizations; ++i) {
    const auto couplings = sample_couplings(c.n_sites, realization_seed(c.base_seed, i), kind_of(c));
    slots[static_cast<std::size_t>(i)] = bulk_gap_samples(couplings, profile, opt);
  }
  std::vector<double> gaps;
  for (const auto& s : slots) gaps.insert(gaps.end(), s.begin(), s.end());
  if (n_gaps) *n_gaps = static_cast<std::int64_t>(gaps.size());
  return gaps;
}

int run_gap_collapse(const RunConfig& c, nlohmann::json* extra_out) {
  dump_couplings_file(c);
  std::vector<CollapseHistogram> histograms;
  nlohmann::json counts = nlohmann::json::object();
  for (double alpha : c.alphas) {
    std::int64_t n_gaps = 0;
    const auto gaps = gather_theta(c, alpha, &n_gaps);
    histograms.push_back(collapse_histogram(gaps, alpha));
    char key[32];
    std::snprintf(key, sizeof key, "%.17g", alpha);
    counts[key] = n_gaps;
  }

  CsvBuilder hist("alpha,bin_lo,bin_hi,density");
  for (const auto& h : histograms) {
    for (std::size_t b = 0; b + 1 < h.bin_edges.size(); ++b) {
      hist.field(h.alpha).field(h.bin_edges[b]).field(h.bin_edges[b + 1]).field(h.density[b]);
      hist.end_row();
    }
  }
  write_file_atomic(fs::path(c.output_dir) / "histogram.csv", hist.text());

  CsvBuilder ks("alpha_a,alpha_b,ks_distance");
  nlohmann::json ks_json = nlohmann::json::array();
  for (std::size_t a = 0; a < histograms.size(); ++a) {
    for (std::size_t b = a + 1; b < histograms.size(); ++b) {
      const double d = ks_distance(histograms[a].samples, histograms[b].samples);
      ks.field(histograms[a].alpha).field(histograms[b].alpha).field(d);
      ks.end_row();
      ks_json.push_back({{"alpha_a", histograms[a].alpha}, {"alpha_b", histograms[b].alpha}, {"ks", d}});
    }
  }
  write_file_atomic(fs::path(c.output_dir) / "ks.csv", ks.text());

  nlohmann::json extra{{"samples_per_alpha", counts}, {"ks_pairs", ks_json}};
  if (c.fit_prefactor) {
    // reference: the smallest-alpha theta distribution (deepest in the
    // universal regime)
    std::size_t ref = 0;
    for (std::size_t i = 1; i < histograms.size(); ++i) {
      if (histograms[i].alpha < histograms[ref].alpha) ref = i;
    }
    CsvBuilder pf("n_sites,c,ks_at_c");
    nlohmann::json pf_json = nlohmann::json::array();
    const double gc = critical_field(kind_of(c));
    const int workers = effective_workers(c);
    for (int n : c.prefactor_sizes) {
      std::vector<double> hom_gaps(static_cast<std::size_t>(c.n_prefactor_realizations));
      const std::uint64_t stream = mix64(c.base_seed ^ (0x484F4D00ull + static_cast<std::uint64_t>(n)));
#pragma omp parallel for schedule(dynamic) num_threads(workers)
      for (int i = 0; i < c.n_prefactor_realizations; ++i) {
        const auto couplings = sample_couplings(n, realization_seed(stream, i), kind_of(c));
        hom_gaps[static_cast<std::size_t>(i)] = homogeneous_critical_gap(couplings, gc);
      }
      const auto fit = fit_collapse_prefactor(hom_gaps, n, histograms[ref].samples);
      pf.field(n).field(fit.c).field(fit.ks_at_c);
      pf.end_row();
      pf_json.push_back({{"n_sites", n}, {"c", fit.c}, {"ks", fit.ks_at_c}});
    }
    write_file_atomic(fs::path(c.output_dir) / "prefactor.csv", pf.text());
    extra["prefactor_fits"] = pf_json;
  }
  *extra_out = std::move(extra);
  return 0;
}

// ---------------------------------------------------------------- quench

struct QuenchJob {
  double alpha;  // 0 = homogeneous
  double total_time;
  int realization;
};

Schedule schedule_for_job(const RunConfig& c, const QuenchJob& job) {
  if (job.alpha > 0.0) {
    const double v = velocity_for(c.n_sites, job.alpha, c.g_init, c.g_final, job.total_time);
    return schedule_for(c.n_sites, profile_for(c, job.alpha, v));
  }
  return homogeneous_schedule(c.n_sites, c.g_init, c.g_final, job.total_time);
}

struct OracleComparison {
  double q_error = 0.0;
  double fidelity_error = 0.0;
};

OracleComparison compare_with_ed(const RunConfig& c, const CouplingRealization& couplings,
                                 const Schedule& schedule, const QuenchResult& result) {
  const std::vector<double> g_init(static_cast<std::size_t>(c.n_sites), c.g_init);
  const auto sys0 = ed_build(couplings, g_init);
  const int sector = ed_ground_parity(sys0);
  Eigen::VectorXcd psi = ed_sector_eigen(sys0, sector).vectors.col(0).cast<std::complex<double>>();
  const auto fields_at = [&schedule](double t, std::span<double> out) {
    fields_at_time(schedule, t, out);
  };
  psi = ed_evolve(couplings.couplings, fields_at, psi, schedule.t_start, schedule.t_end, 1e-11);

  const std::vector<double> g_end(static_cast<std::size_t>(c.n_sites), c.g_final);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(ed_build(couplings, g_end).hamiltonian);
  const double q_ed = ed_energy(couplings.couplings, g_end, psi) - full.eigenvalues()(0);

  OracleComparison cmp;
  cmp.q_error = std::abs(result.residual_energy - q_ed);
  if (result.fidelity.has_value()) {
    const auto final_sec = ed_sector_eigen(ed_build(couplings, g_end), sector);
    const double f_ed = ed_overlap(final_sec.vectors.col(0).cast<std::complex<double>>(), psi);
    cmp.fidelity_error = std::abs(*result.fidelity - f_ed);
  }
  return cmp;
}

int run_quench(const RunConfig& c, nlohmann::json*) {
  dump_couplings_file(c);
  std::vector<double> alphas = c.homogeneous ? std::vector<double>{0.0} : c.alphas;
  std::vector<QuenchJob> jobs;
  for (double alpha : alphas) {
    for (double t : c.total_times) {
      for (int i = 0; i < c.n_realizations; ++i) jobs.push_back({alpha, t, i});
    }
  }
  struct Slot {
    QuenchResult result;
    double velocity;
    EvolveReport report;
  };
  std::vector<Slot> slots(jobs.size());
  const int workers = effective_workers(c);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(jobs.size()); ++k) {
    const auto& job = jobs[static_cast<std::size_t>(k)];
    const auto couplings =
        sample_couplings(c.n_sites, realization_seed(c.base_seed, job.realization), kind_of(c));
    const Schedule schedule = schedule_for_job(c, job);
    EvolveOptions opt;
    opt.dt = c.dt;
    opt.checkpoint_stride = c.checkpoint_stride;
    auto& slot = slots[static_cast<std::size_t>(k)];
    const auto state = evolve_quench(couplings, schedule, opt, &slot.report);
    MeasureOptions mopt;
    mopt.with_fidelity = c.with_fidelity || c.oracle_check;
    slot.result = measure_quench(state, couplings, schedule, mopt);
    slot.velocity = job.alpha > 0.0 ? schedule.profile.velocity : 0.0;
  }

  CsvBuilder rows("realization_seed,alpha,T,v,N,dt,Q,kink_density,parity,orth_drift,fidelity");
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const auto& job = jobs[k];
    const auto& slot = slots[k];
    rows.field(realization_seed(c.base_seed, job.realization))
        .field(job.alpha)
        .field(job.total_time)
        .field(slot.velocity)
        .field(c.n_sites)
        .field(c.dt)
        .field(slot.result.residual_energy)
        .field(slot.result.kink_density)
        .field(slot.result.parity)
        .field(slot.result.orthogonality_drift)
        .field(slot.result.fidelity.has_value() ? *slot.result.fidelity
                                                : std::numeric_limits<double>::quiet_NaN());
    rows.end_row();
  }
  write_file_atomic(fs::path(c.output_dir) / "results.csv", rows.text());

  if (c.checkpoint_stride > 0) {
    CsvBuilder cps("realization_seed,alpha,T,t,energy,orth_drift,parity");
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      for (const auto& cp : slots[k].report.checkpoints) {
        cps.field(realization_seed(c.base_seed, jobs[k].realization))
            .field(jobs[k].alpha)
            .field(jobs[k].total_time)
            .field(cp.t)
            .field(cp.energy)
            .field(cp.orthogonality_drift)
            .field(cp.parity);
        cps.end_row();
      }
    }
    write_file_atomic(fs::path(c.output_dir) / "checkpoints.csv", cps.text());
  }

  int status = 0;
  if (c.oracle_check) {
    CsvBuilder oracle("realization_seed,alpha,T,q_error,fidelity_error,pass");
    // 1e-7 at the reference step 0.005, scaled by the 4th-order law for
    // coarser steps.
    const double kTol = 1e-7 * std::max(1.0, std::pow(c.dt / 0.005, 4.0));
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      const auto couplings = sample_couplings(
          c.n_sites, realization_seed(c.base_seed, jobs[k].realization), kind_of(c));
      const auto cmp = compare_with_ed(c, couplings, schedule_for_job(c, jobs[k]), slots[k].result);
      const bool pass = cmp.q_error < kTol && cmp.fidelity_error < kTol;
      if (!pass) status = 2;
      oracle.field(realization_seed(c.base_seed, jobs[k].realization))
          .field(jobs[k].alpha)
          .field(jobs[k].total_time)
          .field(cmp.q_error)
          .field(cmp.fidelity_error)
          .field(std::string(pass ? "1" : "0"));
      oracle.end_row();
      std::printf("oracle quench alpha=%g T=%g seed#%d: |dQ|=%.3e |dF|=%.3e %s\n", jobs[k].alpha,
                  jobs[k].total_time, jobs[k].realization, cmp.q_error, cmp.fidelity_error,
                  pass ? "PASS" : "FAIL");
    }
    write_file_atomic(fs::path(c.output_dir) / "oracle.csv", oracle.text());
  }
  return status;
}

// -------------------------------------------------------------- landscape

int run_landscape(const RunConfig& c, nlohmann::json*) {
  dump_couplings_file(c);
  LandscapeOptions opt;
  opt.alphas = c.alphas;
  opt.total_times = c.total_times;
  opt.include_homogeneous = true;
  opt.n_sites = c.n_sites;
  opt.n_realizations = c.n_realizations;
  opt.base_seed = c.base_seed;
  opt.dt = c.dt;
  opt.g_init = c.g_init;
  opt.g_final = c.g_final;
  opt.kind = kind_of(c);
  opt.workers = c.workers;
  const auto grid = landscape(opt);

  CsvBuilder table("alpha,T,v,N,q01,q05,q50,q95,q99,n_realizations");
  CsvBuilder raw("alpha,T,realization_seed,Q,kink_density");
  for (const auto& point : grid) {
    table.field(point.alpha).field(point.total_time).field(point.velocity).field(point.n_sites);
    for (double q : point.q_residual) table.field(q);
    table.field(static_cast<std::int64_t>(point.residual_energy.size()));
    table.end_row();
    for (std::size_t i = 0; i < point.residual_energy.size(); ++i) {
      raw.field(point.alpha)
          .field(point.total_time)
          .field(realization_seed(c.base_seed, i))
          .field(point.residual_energy[i])
          .field(point.kink_density[i]);
      raw.end_row();
    }
  }
  write_file_atomic(fs::path(c.output_dir) / "landscape.csv", table.text());
  write_file_atomic(fs::path(c.output_dir) / "realizations.csv", raw.text());
  return 0;
}

// -------------------------------------------------------------- kzm sweep

int run_kzm_sweep(const RunConfig& c, nlohmann::json* extra_out) {
  dump_couplings_file(c);
  const double gc = critical_field(kind_of(c));
  CsvBuilder rows("tau_q,T,N,realization_seed,kink_density,Q");
  std::vector<double> med_kinks;
  const int workers = effective_workers(c);
  for (double tau : c.tau_q) {
    const double total_time = tau * (c.g_init - c.g_final) / gc;
    std::vector<double> kinks(static_cast<std::size_t>(c.n_realizations));
    std::vector<double> qs(static_cast<std::size_t>(c.n_realizations));
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int i = 0; i < c.n_realizations; ++i) {
      const auto couplings =
          sample_couplings(c.n_sites, realization_seed(c.base_seed, i), kind_of(c));
      const auto schedule = homogeneous_schedule(c.n_sites, c.g_init, c.g_final, total_time);
      EvolveOptions opt;
      opt.dt = c.dt;
      const auto r = measure_quench(evolve_quench(couplings, schedule, opt), couplings, schedule);
      kinks[static_cast<std::size_t>(i)] = r.kink_density;
      qs[static_cast<std::size_t>(i)] = r.residual_energy;
    }
    for (int i = 0; i < c.n_realizations; ++i) {
      rows.field(tau)
          .field(total_time)
          .field(c.n_sites)
          .field(realization_seed(c.base_seed, i))
          .field(kinks[static_cast<std::size_t>(i)])
          .field(qs[static_cast<std::size_t>(i)]);
      rows.end_row();
    }
    med_kinks.push_back(quantile(kinks, 0.5));
  }
  write_file_atomic(fs::path(c.output_dir) / "kzm.csv", rows.text());
  const auto fit = powerlaw_fit(c.tau_q, med_kinks);
  std::printf("kink-density fit: d ~ %.4g * tau_Q^(%.4f), r^2 = %.6f\n", fit.prefactor,
              fit.exponent, fit.r_squared);
  *extra_out = nlohmann::json{{"fit_exponent", fit.exponent},
                              {"fit_prefactor", fit.prefactor},
                              {"fit_r_squared", fit.r_squared}};
  return 0;
}

// ------------------------------------------------------------ oracle check

int run_oracle_check(const RunConfig& c, nlohmann::json*) {
  int status = 0;
  CsvBuilder rows("check,n_sites,seed_index,value,tolerance,pass");

  // statics corpus: gap and mixing element against ED
  double max_gap_err = 0.0, max_mix_err = 0.0;
  for (int n : {2, 4, 6, 8}) {
    for (int i = 0; i < std::min(c.n_realizations, 20); ++i) {
      const auto couplings = sample_couplings(n, realization_seed(c.base_seed, i), kind_of(c));
      FrontProfile profile = profile_for(c, 0.5, 1.0);
      const double hw = profile.half_width();
      const std::vector<double> g_init(static_cast<std::size_t>(n), c.g_init);
      const int sector = ed_ground_parity(ed_build(couplings, g_init));
      for (int p = 0; p < 5; ++p) {
        const double n_f = -hw + 0.37 + (static_cast<double>(p) + 0.5) * (n + 2 * hw) / 5.0;
        const auto point = spectral_point(couplings, profile, n_f);
        const auto fields = fields_at_front(profile, n, n_f);
        const auto sys = ed_build(couplings, fields);
        const auto spectrum = ed_sector_spectrum(sys, sector);
        std::vector<double> grad(static_cast<std::size_t>(n));
        for (int s = 1; s <= n; ++s)
          grad[static_cast<std::size_t>(s - 1)] = field_gradient_at(profile, s, n_f);
        const double mix_ed = std::abs(ed_matrix_element(sys, grad, 0, 1, sector));
        max_gap_err = std::max(max_gap_err, std::abs(point.gap - (spectrum(1) - spectrum(0))));
        max_mix_err = std::max(max_mix_err, std::abs(point.mixing - mix_ed));
      }
    }
  }
  const bool statics_pass = max_gap_err < 1e-9 && max_mix_err < 1e-9;
  if (!statics_pass) status = 2;
  rows.field(std::string("gap_vs_ed")).field(8).field(0).field(max_gap_err).field(1e-9);
  rows.field(std::string(statics_pass ? "1" : "0"));
  rows.end_row();
  rows.field(std::string("mixing_vs_ed")).field(8).field(0).field(max_mix_err).field(1e-9);
  rows.field(std::string(statics_pass ? "1" : "0"));
  rows.end_row();
  std::printf("oracle statics: max|dDelta|=%.3e max|dOmega|=%.3e %s\n", max_gap_err, max_mix_err,
              statics_pass ? "PASS" : "FAIL");

  // dynamics: N = 6 quench against the ED integrator
  {
    RunConfig qc = c;
    qc.kind = ExperimentKind::Quench;
    qc.n_sites = 6;
    qc.alphas = {0.5};
    qc.total_times = {50.0};
    qc.n_realizations = std::min(c.n_realizations, 3);
    qc.dt = 0.005;
    qc.with_fidelity = true;
    for (int i = 0; i < qc.n_realizations; ++i) {
      const auto couplings = sample_couplings(6, realization_seed(qc.base_seed, i), kind_of(qc));
      const QuenchJob job{0.5, 50.0, i};
      const auto schedule = schedule_for_job(qc, job);
      EvolveOptions opt;
      opt.dt = qc.dt;
      MeasureOptions mopt;
      mopt.with_fidelity = true;
      const auto result =
          measure_quench(evolve_quench(couplings, schedule, opt), couplings, schedule, mopt);
      const auto cmp = compare_with_ed(qc, couplings, schedule, result);
      const bool pass = cmp.q_error < 1e-7 && cmp.fidelity_error < 1e-7;
      if (!pass) status = 2;
      rows.field(std::string("quench_q_vs_ed")).field(6).field(i).field(cmp.q_error).field(1e-7);
      rows.field(std::string(pass ? "1" : "0"));
      rows.end_row();
      rows.field(std::string("quench_fidelity_vs_ed")).field(6).field(i).field(cmp.fidelity_error);
      rows.field(1e-7).field(std::string(pass ? "1" : "0"));
      rows.end_row();
      std::printf("oracle dynamics seed#%d: |dQ|=%.3e |dF|=%.3e %s\n", i, cmp.q_error,
                  cmp.fidelity_error, pass ? "PASS" : "FAIL");
    }
  }

  write_file_atomic(fs::path(c.output_dir) / "oracle_report.csv", rows.text());
  std::printf("oracle-check: %s\n", status == 0 ? "PASS" : "FAIL");
  return status;
}

}  // namespace

int run_experiment(const RunConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  int status = 0;
  nlohmann::json extra;
  try {
    config.validate();
    switch (config.kind) {
      case ExperimentKind::SpectralScan: status = run_spectral_scan(config, &extra); break;
      case ExperimentKind::GapCollapse: status = run_gap_collapse(config, &extra); break;
      case ExperimentKind::Quench: status = run_quench(config, &extra); break;
      case ExperimentKind::Landscape: status = run_landscape(config, &extra); break;
      case ExperimentKind::KzmSweep: status = run_kzm_sweep(config, &extra); break;
      case ExperimentKind::OracleCheck: status = run_oracle_check(config, &extra); break;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "kzfront: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "kzfront: numerical failure: " << e.what() << "\n";
    return 2;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(std::filesystem::path(config.output_dir), config.to_json(), wall, extra);
  return status;
}

std::vector<Recipe> figure_recipes() {
  std::vector<Recipe> recipes;

  {
    RunConfig c;
    c.kind = ExperimentKind::SpectralScan;
    c.n_sites = 512;
    c.alphas = {1.0 / 32};
    c.n_realizations = 1;
    c.output_dir = "runs/spectral-trajectory";
    recipes.push_back({"spectral-trajectory",
                       "Gap, mixing element and local threshold velocity along a single "
                       "disorder realization (N=512, alpha=1/32).",
                       c});
  }
  {
    RunConfig c;
    c.kind = ExperimentKind::SpectralScan;
    c.n_sites = 512;
    c.alphas = {1.0 / 128, 1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 1.0};
    c.n_realizations = 200;
    c.output_dir = "runs/threshold-vs-slope";
    recipes.push_back({"threshold-vs-slope",
                       "Quantiles of the minimal gap, maximal mixing element and threshold "
                       "velocity as a function of the front slope (desk scale: 200 "
                       "realizations; increase for publication statistics).",
                       c});
  }
  {
    RunConfig c;
    c.kind = ExperimentKind::GapCollapse;
    c.n_sites = 256;
    c.alphas = {1.0 / 128, 1.0 / 64, 1.0 / 16};
    c.n_realizations = 250;
    c.fit_prefactor = true;
    c.output_dir = "runs/gap-collapse";
    recipes.push_back({"gap-collapse",
                       "Rescaled log-gap distributions for several slopes with the "
                       "homogeneous-critical comparison fit.",
                       c});
  }
  {
    RunConfig c;
    c.kind = ExperimentKind::Landscape;
    c.n_sites = 128;
    c.alphas = {1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 1.0};
    c.total_times = {100, 300, 1000, 2000};
    c.n_realizations = 100;
    c.output_dir = "runs/landscape";
    recipes.push_back({"landscape",
                       "Residual-energy quantiles over the (slope, ramp time) grid with the "
                       "homogeneous reference (desk scale).",
                       c});
  }
  {
    RunConfig c;
    c.kind = ExperimentKind::Landscape;
    c.n_sites = 512;
    c.alphas = {1.0 / 256, 1.0 / 128, 1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8,
                1.0 / 4,   1.0 / 2,   1.0,       2.0,      2.82842712474619};
    c.total_times = {100, 1000, 10000};
    c.n_realizations = 500;
    c.output_dir = "runs/landscape-full";
    recipes.push_back({"landscape-full",
                       "Full-size residual-energy landscape (N=512, T up to 1e4, 500 "
                       "realizations). Long-running: budget several days of CPU time.",
                       c});
  }
  {
    RunConfig c;
    c.kind = ExperimentKind::Quench;
    c.n_sites = 128;
    c.alphas = {1.0 / 32};
    c.total_times = {10000};
    c.n_realizations = 200;
    c.output_dir = "runs/size-comparison";
    recipes.push_back({"size-comparison",
                       "Residual energy of the fixed-slope front versus the homogeneous ramp "
                       "at T=1e4; rerun with n-sites in {64,128,256,512} and homogeneous=true "
                       "for the reference curves.",
                       c});
  }
  {
    RunConfig c;
    c.kind = ExperimentKind::KzmSweep;
    c.n_sites = 256;
    c.tau_q = {10, 30, 100, 300, 1000};
    c.clean = true;
    c.n_realizations = 1;
    c.output_dir = "runs/kzm-clean";
    recipes.push_back({"kzm-clean",
                       "Kink density of the clean homogeneous ramp versus quench time; the "
                       "fitted exponent is -1/2.",
                       c});
  }
  {
    RunConfig c;
    c.kind = ExperimentKind::SpectralScan;
    c.n_sites = 512;
    c.alphas = {1.0 / 128, 1.0 / 64, 1.0 / 32, 1.0 / 16};
    c.clean = true;
    c.n_realizations = 1;
    c.output_dir = "runs/clean-calibration";
    recipes.push_back({"clean-calibration",
                       "Clean-chain front diagnostics: bulk gap sqrt(8 alpha), mixing element "
                       "~ alpha, threshold velocity saturating at 2.",
                       c});
  }
  {
    RunConfig c;
    c.kind = ExperimentKind::OracleCheck;
    c.n_sites = 8;
    c.n_realizations = 20;
    c.output_dir = "runs/oracle-check";
    recipes.push_back({"oracle-check",
                       "Exact-diagonalization cross-check of statics and dynamics on small "
                       "chains.",
                       c});
  }
  return recipes;
}

}  // namespace kzfront::harness
