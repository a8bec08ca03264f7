#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "clsi/cli/config.hpp"

namespace clsi::cli {

inline constexpr const char* kToolVersion = "clsi 0.1.0";
inline constexpr int kSchemaVersion = 1;

struct Failure {
  std::string verdict;
  std::string detail;
};

/// Everything a run produces except its wall time, which is attached only
/// when the result is written so that reruns compare byte for byte.
struct RunResult {
  nlohmann::json document;
  std::map<std::string, std::string> tables;  // file name -> CSV text
  std::vector<Failure> failures;

  bool passed() const { return failures.empty(); }
  nlohmann::json failure_json() const;
};

/// Dispatches on cfg.command. Throws ConfigError for malformed parameters.
RunResult run(const RunConfig& cfg);

/// Writes result.json (with wall_time_seconds) and the CSV tables into `out`.
void write_outputs(const RunResult& result, const std::filesystem::path& out, double wall_time_seconds);

}  // namespace clsi::cli
