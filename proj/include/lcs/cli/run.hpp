#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace lcs::cli {

/// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;     // I/O or unexpected failure
inline constexpr int kExitNumeric = 2;   // some verdict failed
inline constexpr int kExitSchema = 3;    // scene or override rejected

const std::vector<std::string>& subcommands();

struct Artifact {
  std::string file;  // relative to the output directory
  std::string content;
};

struct Outcome {
  int exit_code = kExitPass;
  nlohmann::json report;  // report-v1 without timestamp
  std::vector<Artifact> artifacts;
};

/// Runs one subcommand on a scene file. Never touches the file system apart
/// from reading the scene. An empty subcommand uses the scene's "pipeline".
Outcome execute(const std::string& subcommand, const std::string& scene_path, std::uint64_t seed = 0,
                const std::map<std::string, double>& overrides = {});

struct RunOptions {
  std::string subcommand;
  std::string scene_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int threads = 0;
  std::map<std::string, double> overrides;
  bool quiet = false;
};

/// execute() plus a timestamp, writing <out>/<scene>.<subcommand>.report.json
/// and the CSV artifacts. Returns the exit code.
int run(const RunOptions& opt);

/// Output directory from LCSLAB_OUT, else "lcslab-out".
std::string default_out_dir();

/// Parses KEY=VAL; throws std::invalid_argument.
std::pair<std::string, double> parse_override(const std::string& text);

}  // namespace lcs::cli
