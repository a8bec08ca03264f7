#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "clsi/cli/commands.hpp"
#include "clsi/cli/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Clifford-algebra LSI and ground-state verification"};
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  bool quiet = false;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory for result.json and CSV tables");
  app.add_option("--seed", seed, "master seed (overrides the config)");
  app.add_option("--samples", samples, "sample count (overrides the config)");
  app.add_flag("--quiet", quiet, "suppress the summary on stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  using clsi::cli::ConfigError;
  nlohmann::json doc;
  clsi::cli::RunConfig cfg;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config '" + config_path + "'");
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (doc.is_object()) {
      if (seed) doc["seed"] = *seed;
      if (samples) doc["samples"] = *samples;
    }
    cfg = clsi::cli::parse_config(doc);
  } catch (const ConfigError& e) {
    std::cerr << nlohmann::json{{"error", "config"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  clsi::cli::RunResult result;
  try {
    result = clsi::cli::run(cfg);
  } catch (const ConfigError& e) {
    std::cerr << nlohmann::json{{"error", "config"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << nlohmann::json{{"error", "config"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  try {
    clsi::cli::write_outputs(result, out_dir, wall);
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "output"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  if (!quiet) {
    std::cout << cfg.command << " n=" << cfg.n << "\n";
    for (const auto& [name, ok] : result.document["verdicts"].items()) {
      std::cout << "  " << (ok.get<bool>() ? "ok    " : "FAILED") << " " << name << "\n";
    }
    std::cout << "wrote " << (std::filesystem::path(out_dir) / "result.json").string() << "\n";
  }
  if (!result.passed()) {
    std::cerr << result.failure_json().dump() << "\n";
    return 1;
  }
  return 0;
}
