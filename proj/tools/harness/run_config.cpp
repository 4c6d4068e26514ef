#include "run_config.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace kzfront::harness {

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::SpectralScan: return "spectral-scan";
    case ExperimentKind::GapCollapse: return "gap-collapse";
    case ExperimentKind::Quench: return "quench";
    case ExperimentKind::Landscape: return "landscape";
    case ExperimentKind::KzmSweep: return "kzm-sweep";
    case ExperimentKind::OracleCheck: return "oracle-check";
  }
  return "unknown";
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument("config: " + message);
}

void require_alphas(const RunConfig& c) {
  require(!c.alphas.empty(), "alphas must be non-empty");
  for (double a : c.alphas) require(a > 0.0, "every alpha must be > 0");
}

}  // namespace

void RunConfig::validate() const {
  require(n_sites >= 2, "n_sites must be >= 2");
  require(dt > 0.0, "dt must be > 0");
  require(n_realizations >= 1, "n_realizations must be >= 1");
  require(g_init > g_final, "g_init must exceed g_final");
  require(grid_step > 0.0, "grid_step must be > 0");
  require(margin_sites >= 0.0, "margin_sites must be >= 0");
  require(smoothing_sites >= 0.0, "smoothing_sites must be >= 0");
  require(critical_margin_lengths >= 0.0, "critical_margin_lengths must be >= 0");
  require(workers >= 0, "workers must be >= 0");
  require(bulk_mode == "auto" || bulk_mode == "ramp" || bulk_mode == "critical",
          "bulk_mode must be auto, ramp or critical");
  switch (kind) {
    case ExperimentKind::SpectralScan:
      require_alphas(*this);
      break;
    case ExperimentKind::GapCollapse:
      require_alphas(*this);
      if (fit_prefactor) {
        require(!prefactor_sizes.empty(), "prefactor_sizes must be non-empty");
        for (int n : prefactor_sizes) require(n >= 2, "prefactor sizes must be >= 2");
        require(n_prefactor_realizations >= 2, "n_prefactor_realizations must be >= 2");
      }
      break;
    case ExperimentKind::Quench:
      require(!total_times.empty(), "total_times must be non-empty");
      for (double t : total_times) require(t > 0.0, "every total time must be > 0");
      if (!homogeneous) require_alphas(*this);
      if (oracle_check) require(n_sites <= 10, "oracle_check needs n_sites <= 10");
      break;
    case ExperimentKind::Landscape:
      require_alphas(*this);
      require(!total_times.empty(), "total_times must be non-empty");
      for (double t : total_times) require(t > 0.0, "every total time must be > 0");
      break;
    case ExperimentKind::KzmSweep:
      require(!tau_q.empty(), "tau_q must be non-empty");
      for (double t : tau_q) require(t > 0.0, "every tau_q must be > 0");
      break;
    case ExperimentKind::OracleCheck:
      break;
  }
}

nlohmann::json RunConfig::to_json() const {
  return nlohmann::json{{"kind", to_string(kind)},
                        {"n_sites", n_sites},
                        {"alphas", alphas},
                        {"total_times", total_times},
                        {"tau_q", tau_q},
                        {"g_init", g_init},
                        {"g_final", g_final},
                        {"dt", dt},
                        {"n_realizations", n_realizations},
                        {"base_seed", base_seed},
                        {"output_dir", output_dir},
                        {"clean", clean},
                        {"homogeneous", homogeneous},
                        {"with_fidelity", with_fidelity},
                        {"oracle_check", oracle_check},
                        {"workers", workers},
                        {"grid_step", grid_step},
                        {"margin_sites", margin_sites},
                        {"bulk_mode", bulk_mode},
                        {"checkpoint_stride", checkpoint_stride},
                        {"smoothing_sites", smoothing_sites},
                        {"dump_couplings", dump_couplings},
                        {"fit_prefactor", fit_prefactor},
                        {"prefactor_sizes", prefactor_sizes},
                        {"n_prefactor_realizations", n_prefactor_realizations}};
}

namespace {

// One row per config key: serialize, parse, and field-copy in lockstep so the
// three stay consistent.
struct FieldCodec {
  std::string key;
  std::string (*write)(const RunConfig&);
  void (*read)(RunConfig&, const std::string&);
  void (*copy)(RunConfig&, const RunConfig&);
};

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  const std::int64_t v = std::stoll(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

std::uint64_t parse_uint(const std::string& s) {
  std::size_t used = 0;
  const std::uint64_t v = std::stoull(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("bad boolean: " + s);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, ',')) parts.push_back(part);
  return parts;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& p : split_commas(s)) out.push_back(parse_double(p));
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& p : split_commas(s)) out.push_back(static_cast<int>(parse_int(p)));
  return out;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string join_values(const std::vector<T>& values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ",";
    if constexpr (std::is_same_v<T, double>) {
      out << fmt_double(values[i]);
    } else {
      out << values[i];
    }
  }
  return out.str();
}

const std::vector<FieldCodec>& codecs() {
  static const std::vector<FieldCodec> table = {
      {"n-sites", [](const RunConfig& c) { return std::to_string(c.n_sites); },
       [](RunConfig& c, const std::string& v) { c.n_sites = static_cast<int>(parse_int(v)); },
       [](RunConfig& d, const RunConfig& s) { d.n_sites = s.n_sites; }},
      {"alpha", [](const RunConfig& c) { return join_values(c.alphas); },
       [](RunConfig& c, const std::string& v) { c.alphas = parse_doubles(v); },
       [](RunConfig& d, const RunConfig& s) { d.alphas = s.alphas; }},
      {"total-time", [](const RunConfig& c) { return join_values(c.total_times); },
       [](RunConfig& c, const std::string& v) { c.total_times = parse_doubles(v); },
       [](RunConfig& d, const RunConfig& s) { d.total_times = s.total_times; }},
      {"tau-q", [](const RunConfig& c) { return join_values(c.tau_q); },
       [](RunConfig& c, const std::string& v) { c.tau_q = parse_doubles(v); },
       [](RunConfig& d, const RunConfig& s) { d.tau_q = s.tau_q; }},
      {"g-init", [](const RunConfig& c) { return fmt_double(c.g_init); },
       [](RunConfig& c, const std::string& v) { c.g_init = parse_double(v); },
       [](RunConfig& d, const RunConfig& s) { d.g_init = s.g_init; }},
      {"g-final", [](const RunConfig& c) { return fmt_double(c.g_final); },
       [](RunConfig& c, const std::string& v) { c.g_final = parse_double(v); },
       [](RunConfig& d, const RunConfig& s) { d.g_final = s.g_final; }},
      {"dt", [](const RunConfig& c) { return fmt_double(c.dt); },
       [](RunConfig& c, const std::string& v) { c.dt = parse_double(v); },
       [](RunConfig& d, const RunConfig& s) { d.dt = s.dt; }},
      {"realizations", [](const RunConfig& c) { return std::to_string(c.n_realizations); },
       [](RunConfig& c, const std::string& v) { c.n_realizations = static_cast<int>(parse_int(v)); },
       [](RunConfig& d, const RunConfig& s) { d.n_realizations = s.n_realizations; }},
      {"seed", [](const RunConfig& c) { return std::to_string(c.base_seed); },
       [](RunConfig& c, const std::string& v) { c.base_seed = parse_uint(v); },
       [](RunConfig& d, const RunConfig& s) { d.base_seed = s.base_seed; }},
      {"output", [](const RunConfig& c) { return c.output_dir; },
       [](RunConfig& c, const std::string& v) { c.output_dir = v; },
       [](RunConfig& d, const RunConfig& s) { d.output_dir = s.output_dir; }},
      {"clean", [](const RunConfig& c) { return std::string(c.clean ? "true" : "false"); },
       [](RunConfig& c, const std::string& v) { c.clean = parse_bool(v); },
       [](RunConfig& d, const RunConfig& s) { d.clean = s.clean; }},
      {"homogeneous", [](const RunConfig& c) { return std::string(c.homogeneous ? "true" : "false"); },
       [](RunConfig& c, const std::string& v) { c.homogeneous = parse_bool(v); },
       [](RunConfig& d, const RunConfig& s) { d.homogeneous = s.homogeneous; }},
      {"fidelity", [](const RunConfig& c) { return std::string(c.with_fidelity ? "true" : "false"); },
       [](RunConfig& c, const std::string& v) { c.with_fidelity = parse_bool(v); },
       [](RunConfig& d, const RunConfig& s) { d.with_fidelity = s.with_fidelity; }},
      {"oracle-check", [](const RunConfig& c) { return std::string(c.oracle_check ? "true" : "false"); },
       [](RunConfig& c, const std::string& v) { c.oracle_check = parse_bool(v); },
       [](RunConfig& d, const RunConfig& s) { d.oracle_check = s.oracle_check; }},
      {"workers", [](const RunConfig& c) { return std::to_string(c.workers); },
       [](RunConfig& c, const std::string& v) { c.workers = static_cast<int>(parse_int(v)); },
       [](RunConfig& d, const RunConfig& s) { d.workers = s.workers; }},
      {"grid-step", [](const RunConfig& c) { return fmt_double(c.grid_step); },
       [](RunConfig& c, const std::string& v) { c.grid_step = parse_double(v); },
       [](RunConfig& d, const RunConfig& s) { d.grid_step = s.grid_step; }},
      {"margin", [](const RunConfig& c) { return fmt_double(c.margin_sites); },
       [](RunConfig& c, const std::string& v) { c.margin_sites = parse_double(v); },
       [](RunConfig& d, const RunConfig& s) { d.margin_sites = s.margin_sites; }},
      {"critical-margin", [](const RunConfig& c) { return fmt_double(c.critical_margin_lengths); },
       [](RunConfig& c, const std::string& v) { c.critical_margin_lengths = parse_double(v); },
       [](RunConfig& d, const RunConfig& s) { d.critical_margin_lengths = s.critical_margin_lengths; }},
      {"bulk-mode", [](const RunConfig& c) { return c.bulk_mode; },
       [](RunConfig& c, const std::string& v) { c.bulk_mode = v; },
       [](RunConfig& d, const RunConfig& s) { d.bulk_mode = s.bulk_mode; }},
      {"checkpoint-stride", [](const RunConfig& c) { return std::to_string(c.checkpoint_stride); },
       [](RunConfig& c, const std::string& v) { c.checkpoint_stride = static_cast<int>(parse_int(v)); },
       [](RunConfig& d, const RunConfig& s) { d.checkpoint_stride = s.checkpoint_stride; }},
      {"smoothing", [](const RunConfig& c) { return fmt_double(c.smoothing_sites); },
       [](RunConfig& c, const std::string& v) { c.smoothing_sites = parse_double(v); },
       [](RunConfig& d, const RunConfig& s) { d.smoothing_sites = s.smoothing_sites; }},
      {"dump-couplings", [](const RunConfig& c) { return std::string(c.dump_couplings ? "true" : "false"); },
       [](RunConfig& c, const std::string& v) { c.dump_couplings = parse_bool(v); },
       [](RunConfig& d, const RunConfig& s) { d.dump_couplings = s.dump_couplings; }},
      {"fit-prefactor", [](const RunConfig& c) { return std::string(c.fit_prefactor ? "true" : "false"); },
       [](RunConfig& c, const std::string& v) { c.fit_prefactor = parse_bool(v); },
       [](RunConfig& d, const RunConfig& s) { d.fit_prefactor = s.fit_prefactor; }},
      {"prefactor-sizes", [](const RunConfig& c) { return join_values(c.prefactor_sizes); },
       [](RunConfig& c, const std::string& v) { c.prefactor_sizes = parse_ints(v); },
       [](RunConfig& d, const RunConfig& s) { d.prefactor_sizes = s.prefactor_sizes; }},
      {"prefactor-realizations",
       [](const RunConfig& c) { return std::to_string(c.n_prefactor_realizations); },
       [](RunConfig& c, const std::string& v) {
         c.n_prefactor_realizations = static_cast<int>(parse_int(v));
       },
       [](RunConfig& d, const RunConfig& s) {
         d.n_prefactor_realizations = s.n_prefactor_realizations;
       }},
  };
  return table;
}

}  // namespace

std::string to_config_text(const RunConfig& c) {
  std::ostringstream out;
  for (const auto& codec : codecs()) {
    const std::string value = codec.write(c);
    if (!value.empty()) out << codec.key << "=" << value << "\n";
  }
  return out.str();
}

void apply_config_text(const std::string& text, RunConfig& config) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t'))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    const auto eq = line.find('=', start);
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = line.substr(start, eq - start);
    const std::string value = line.substr(eq + 1);
    bool found = false;
    for (const auto& codec : codecs()) {
      if (codec.key == key) {
        try {
          codec.read(config, value);
        } catch (const std::exception& e) {
          throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
        }
        found = true;
        break;
      }
    }
    if (!found)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& codec : codecs()) out.push_back(codec.key);
    return out;
  }();
  return keys;
}

void copy_config_field(const std::string& key, const RunConfig& source, RunConfig& target) {
  for (const auto& codec : codecs()) {
    if (codec.key == key) {
      codec.copy(target, source);
      return;
    }
  }
  throw std::invalid_argument("unknown config key '" + key + "'");
}

}  // namespace kzfront::harness
