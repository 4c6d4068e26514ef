#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace kzfront::harness {

/// Row-oriented CSV buffer. Doubles are printed with %.17g so identical runs
/// produce byte-identical files; infinities print as "inf".
class CsvBuilder {
 public:
  explicit CsvBuilder(std::string header_line);

  CsvBuilder& field(double v);
  CsvBuilder& field(std::int64_t v);
  CsvBuilder& field(std::uint64_t v);
  CsvBuilder& field(int v);
  CsvBuilder& field(const std::string& v);
  void end_row();

  const std::string& text() const { return text_; }

 private:
  std::string text_;
  bool row_open_ = false;
};

/// Write via a temp file + rename, so readers never observe partial output.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

void write_manifest(const std::filesystem::path& dir, const nlohmann::json& config_echo,
                    double wall_seconds, const nlohmann::json& extra = {});

}  // namespace kzfront::harness
