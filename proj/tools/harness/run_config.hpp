#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace kzfront::harness {

enum class ExperimentKind { SpectralScan, GapCollapse, Quench, Landscape, KzmSweep, OracleCheck };

const char* to_string(ExperimentKind kind);

/// One reproducible experiment. Every field is echoed into the run manifest;
/// identical configs produce byte-identical data files.
struct RunConfig {
  ExperimentKind kind = ExperimentKind::Quench;
  int n_sites = 128;
  std::vector<double> alphas;
  std::vector<double> total_times;
  std::vector<double> tau_q;  // kzm-sweep quench times
  double g_init = 3.0;
  double g_final = 0.0;
  double dt = 0.02;
  int n_realizations = 100;
  std::uint64_t base_seed = 1;
  std::string output_dir = "runs/out";
  bool clean = false;        // clean couplings J = 1 instead of disorder
  bool homogeneous = false;  // quench: homogeneous ramp instead of a front
  bool with_fidelity = false;
  bool oracle_check = false;  // quench: cross-check against exact diagonalization
  int workers = 0;            // 0: all available
  double grid_step = 0.25;
  double margin_sites = 4.0;
  double critical_margin_lengths = 2.0;
  std::string bulk_mode = "auto";  // auto | ramp | critical
  int checkpoint_stride = 0;
  double smoothing_sites = 0.0;  // front-kink rounding half-width
  bool dump_couplings = false;   // write the sampled realizations to couplings.json
  bool fit_prefactor = false;  // gap-collapse: fit the homogeneous comparison c
  std::vector<int> prefactor_sizes = {128, 256};
  int n_prefactor_realizations = 20000;

  /// Throws std::invalid_argument with a field-referenced message.
  void validate() const;

  nlohmann::json to_json() const;
};

/// Key=value lines accepted back by the CLI via --config.
std::string to_config_text(const RunConfig& config);

/// Apply key=value lines (as produced by to_config_text; # starts a comment)
/// onto `config`. Throws std::invalid_argument with the offending line number
/// for unknown keys or unparsable values. parse(serialize(c)) == c.
void apply_config_text(const std::string& text, RunConfig& config);

/// Config keys in a fixed order; used by the CLI to decide which fields an
/// explicit command-line flag has overridden.
const std::vector<std::string>& config_keys();

/// Copy the field named `key` from `source` to `target`.
void copy_config_field(const std::string& key, const RunConfig& source, RunConfig& target);

}  // namespace kzfront::harness
