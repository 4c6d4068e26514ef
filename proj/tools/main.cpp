#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "harness/experiments.hpp"
#include "harness/run_config.hpp"
#include "kzfront/version.hpp"

namespace {

using kzfront::harness::ExperimentKind;
using kzfront::harness::RunConfig;

struct CliState {
  RunConfig config;
  std::string config_path;
  bool dry_run = false;
};

/// Options shared by every subcommand. Explicit command-line flags override
/// values loaded from --config.
void add_common_options(CLI::App& cmd, CliState& state) {
  cmd.add_option("--config", state.config_path, "Read options from a key=value file");
  cmd.add_flag("--dry-run", state.dry_run, "Validate and echo the configuration, run nothing");
  cmd.add_option("-n,--n-sites", state.config.n_sites, "Chain length");
  cmd.add_option("--g-init", state.config.g_init, "Initial transverse field");
  cmd.add_option("--g-final", state.config.g_final, "Final transverse field");
  cmd.add_option("--dt", state.config.dt, "Product-formula step");
  cmd.add_option("-r,--realizations", state.config.n_realizations, "Disorder realizations");
  cmd.add_option("-s,--seed", state.config.base_seed, "Base seed of the realization streams");
  cmd.add_option("-o,--output", state.config.output_dir, "Output directory");
  cmd.add_flag("--clean", state.config.clean, "Clean couplings J = 1 instead of disorder");
  cmd.add_option("--smoothing", state.config.smoothing_sites,
                 "Round the front kinks over this many sites (0: plain piecewise front)");
  cmd.add_flag("--dump-couplings", state.config.dump_couplings,
               "Write the sampled realizations to couplings.json");
  cmd.add_option("-w,--workers", state.config.workers, "Worker threads (0: all)")
      ->envname("KZFRONT_WORKERS");
}

void add_scan_options(CLI::App& cmd, CliState& state) {
  cmd.add_option("--grid-step", state.config.grid_step, "Front positions per site: 1/grid-step");
  cmd.add_option("--margin", state.config.margin_sites, "Bulk-window margin in sites");
  cmd.add_option("--critical-margin", state.config.critical_margin_lengths,
                 "Extra critical-window pad in units of alpha^(-2/3)");
  cmd.add_option("--bulk-mode", state.config.bulk_mode, "Bulk window: auto | ramp | critical")
      ->check(CLI::IsMember({"auto", "ramp", "critical"}));
}

/// Option long name of each config key, to detect explicit CLI overrides.
std::string option_name_for(const std::string& key) {
  if (key == "realizations") return "--realizations";
  if (key == "seed") return "--seed";
  if (key == "output") return "--output";
  if (key == "fidelity") return "--fidelity";
  return "--" + key;
}

/// Merge: file values become the base; any option the user typed explicitly
/// keeps its command-line value.
int apply_config_file(CLI::App& cmd, CliState& state) {
  std::ifstream in(state.config_path);
  if (!in) {
    std::fprintf(stderr, "kzfront: cannot read config file '%s'\n", state.config_path.c_str());
    return 1;
  }
  std::ostringstream text;
  text << in.rdbuf();
  RunConfig merged = state.config;
  try {
    kzfront::harness::apply_config_text(text.str(), merged);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "kzfront: %s: %s\n", state.config_path.c_str(), e.what());
    return 1;
  }
  for (const auto& key : kzfront::harness::config_keys()) {
    const auto* opt = cmd.get_option_no_throw(option_name_for(key));
    if (opt != nullptr && opt->count() > 0) {
      kzfront::harness::copy_config_field(key, state.config, merged);
    }
  }
  state.config = merged;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inhomogeneous-front driving of disordered transverse-field Ising chains"};
  app.set_version_flag("--version", std::string("kzfront ") + kzfront::kVersion);
  app.require_subcommand(0, 1);

  CliState state;

  auto* scan = app.add_subcommand(
      "spectral-scan", "Instantaneous gap, mixing element and threshold velocity along the sweep");
  add_common_options(*scan, state);
  add_scan_options(*scan, state);
  scan->add_option("-a,--alpha", state.config.alphas, "Front slopes")->delimiter(',');

  auto* collapse =
      app.add_subcommand("gap-collapse", "Rescaled log-gap distributions over the disorder ensemble");
  add_common_options(*collapse, state);
  add_scan_options(*collapse, state);
  collapse->add_option("-a,--alpha", state.config.alphas, "Front slopes")->delimiter(',');
  collapse->add_flag("--fit-prefactor", state.config.fit_prefactor,
                     "Fit the homogeneous-critical comparison prefactor");
  collapse->add_option("--prefactor-sizes", state.config.prefactor_sizes,
                       "Chain lengths of the homogeneous comparison")->delimiter(',');
  collapse->add_option("--prefactor-realizations", state.config.n_prefactor_realizations,
                       "Realizations per homogeneous comparison length");

  auto* quench = app.add_subcommand("quench", "Full protocol runs at fixed ramp times");
  add_common_options(*quench, state);
  quench->add_option("-a,--alpha", state.config.alphas, "Front slopes (omit with --homogeneous)")->delimiter(',');
  quench->add_option("-T,--total-time", state.config.total_times, "Protocol durations")->delimiter(',');
  quench->add_flag("--homogeneous", state.config.homogeneous, "Site-independent linear ramp");
  quench->add_flag("--fidelity", state.config.with_fidelity, "Also compute ground-state fidelity");
  quench->add_flag("--oracle-check", state.config.oracle_check,
                   "Cross-check against exact diagonalization (n-sites <= 10)");
  quench->add_option("--checkpoint-stride", state.config.checkpoint_stride,
                     "Steps between (t, energy, drift, parity) checkpoints; 0 disables");

  auto* land = app.add_subcommand(
      "landscape",
      "Residual-energy quantiles over the (slope, ramp time) grid plus homogeneous reference");
  add_common_options(*land, state);
  land->add_option("-a,--alpha", state.config.alphas, "Front-slope grid")->delimiter(',');
  land->add_option("-T,--total-time", state.config.total_times, "Ramp-time grid")->delimiter(',');

  auto* kzm = app.add_subcommand("kzm-sweep", "Homogeneous-ramp kink density versus quench time");
  add_common_options(*kzm, state);
  kzm->add_option("--tau-q", state.config.tau_q, "Quench times")->delimiter(',');

  auto* oracle = app.add_subcommand(
      "oracle-check", "Exact-diagonalization cross-check of statics and dynamics on small chains");
  add_common_options(*oracle, state);

  auto* recipes = app.add_subcommand("recipes", "Print ready-made experiment configurations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // any parse problem is a config error
  }

  if (recipes->parsed()) {
    for (const auto& recipe : kzfront::harness::figure_recipes()) {
      recipe.config.validate();
      std::printf("## %s\n#  %s\n#  usage: kzfront %s --config <file-with-these-lines>\n%s\n",
                  recipe.name.c_str(), recipe.description.c_str(),
                  to_string(recipe.config.kind), to_config_text(recipe.config).c_str());
    }
    return 0;
  }

  CLI::App* chosen = nullptr;
  if (scan->parsed()) {
    state.config.kind = ExperimentKind::SpectralScan;
    chosen = scan;
  } else if (collapse->parsed()) {
    state.config.kind = ExperimentKind::GapCollapse;
    chosen = collapse;
  } else if (quench->parsed()) {
    state.config.kind = ExperimentKind::Quench;
    chosen = quench;
  } else if (land->parsed()) {
    state.config.kind = ExperimentKind::Landscape;
    chosen = land;
  } else if (kzm->parsed()) {
    state.config.kind = ExperimentKind::KzmSweep;
    chosen = kzm;
  } else if (oracle->parsed()) {
    state.config.kind = ExperimentKind::OracleCheck;
    chosen = oracle;
  } else {
    std::puts(app.help().c_str());
    return 1;
  }

  if (!state.config_path.empty()) {
    const int status = apply_config_file(*chosen, state);
    if (status != 0) return status;
  }

  if (state.dry_run) {
    try {
      state.config.validate();
    } catch (const std::exception& e) {
      std::fprintf(stderr, "kzfront: %s\n", e.what());
      return 1;
    }
    std::fputs(to_config_text(state.config).c_str(), stdout);
    return 0;
  }
  return kzfront::harness::run_experiment(state.config);
}
