#include "output.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "wfis/wfis.h"

namespace wfis_cli {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

Sink::Sink(const std::string& path) {
  if (path == "-") {
    file_ = stdout;
    return;
  }
  file_ = std::fopen(path.c_str(), "w");
  if (file_ == nullptr) throw std::runtime_error("cannot open " + path + " for writing");
}

Sink::~Sink() {
  if (file_ != nullptr && file_ != stdout) std::fclose(file_);
  if (file_ == stdout) std::fflush(stdout);
}

void Sink::line(const std::string& text) {
  std::fputs(text.c_str(), file_);
  std::fputc('\n', file_);
}

void Sink::row(const std::vector<std::string>& cells) {
  std::string text;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) text += ',';
    text += cells[i];
  }
  line(text);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::string& out, const std::string& subcommand,
                    const std::vector<Param>& params, unsigned long long seed) {
  nlohmann::json j;
  j["tool"] = "wfis";
  j["version"] = wfis_version();
  j["subcommand"] = subcommand;
  j["seed"] = seed;
  j["timestamp"] = utc_timestamp();
  j["output"] = out;
  nlohmann::json args = nlohmann::json::array();
  nlohmann::json named = nlohmann::json::object();
  for (const Param& p : params) {
    args.push_back(p.name);
    if (!p.is_flag) args.push_back(p.value);
    named[p.name.substr(2)] = p.is_flag ? nlohmann::json(true) : nlohmann::json(p.value);
  }
  j["args"] = args;
  j["params"] = named;
  std::ofstream file(out + ".manifest.json");
  if (!file) throw std::runtime_error("cannot write manifest for " + out);
  file << j.dump(2) << '\n';
}

nlohmann::json read_manifest(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot read manifest " + path);
  return nlohmann::json::parse(file);
}

}  // namespace wfis_cli
