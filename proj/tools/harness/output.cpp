#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "kzfront/version.hpp"

namespace kzfront::harness {

CsvBuilder::CsvBuilder(std::string header_line) : text_(std::move(header_line)) {
  text_ += "\n";
}

CsvBuilder& CsvBuilder::field(double v) {
  char buf[40];
  if (std::isinf(v)) {
    std::snprintf(buf, sizeof buf, v > 0 ? "inf" : "-inf");
  } else {
    std::snprintf(buf, sizeof buf, "%.17g", v);
  }
  return field(std::string(buf));
}

CsvBuilder& CsvBuilder::field(std::int64_t v) { return field(std::to_string(v)); }
CsvBuilder& CsvBuilder::field(std::uint64_t v) { return field(std::to_string(v)); }
CsvBuilder& CsvBuilder::field(int v) { return field(std::to_string(v)); }

CsvBuilder& CsvBuilder::field(const std::string& v) {
  if (row_open_) text_ += ",";
  text_ += v;
  row_open_ = true;
  return *this;
}

void CsvBuilder::end_row() {
  text_ += "\n";
  row_open_ = false;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << contents;
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_manifest(const std::filesystem::path& dir, const nlohmann::json& config_echo,
                    double wall_seconds, const nlohmann::json& extra) {
  nlohmann::json manifest{
      {"artifact", "kzfront"},
      {"version", kVersion},
      {"config", config_echo},
      {"wall_seconds", wall_seconds},  // varies run to run; data files do not
  };
  if (!extra.is_null() && !extra.empty()) manifest["results"] = extra;
  write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace kzfront::harness
