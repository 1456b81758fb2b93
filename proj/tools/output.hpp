#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

namespace wfis_cli {

/// Decimal text with 17 significant digits.
std::string num(double v);

/// Scientific notation with 17 significant digits.
std::string sci(double v);

/// Output sink: a file, or stdout for "-".
class Sink {
 public:
  explicit Sink(const std::string& path);
  ~Sink();
  Sink(const Sink&) = delete;
  Sink& operator=(const Sink&) = delete;

  bool is_stdout() const { return file_ == stdout; }
  void line(const std::string& text);
  /// Comma-joined row.
  void row(const std::vector<std::string>& cells);

 private:
  std::FILE* file_;
};

/// Option value recorded for the run manifest.
struct Param {
  std::string name;  // long flag, e.g. "--max-n"
  std::string value;
  bool is_flag = false;
};

/// Writes `<out>.manifest.json` next to an output file.
void write_manifest(const std::string& out, const std::string& subcommand,
                    const std::vector<Param>& params, unsigned long long seed);

nlohmann::json read_manifest(const std::string& path);

/// ISO-8601 UTC time of the call.
std::string utc_timestamp();

}  // namespace wfis_cli
