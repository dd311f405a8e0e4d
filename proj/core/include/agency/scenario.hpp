#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "agency/engine.hpp"

namespace agency {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Stable process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCalibration = 3;
inline constexpr int kExitIo = 4;

// One of the eight compiled-in experiment scenarios: who has the memory
// advantage, how long the limited party's memory is, and how turbulent the
// environment is.
struct ScenarioPreset {
  std::string name;  // e.g. "agent-adv/mP1/stable"
  std::optional<std::size_t> memory_principal;
  std::optional<std::size_t> memory_agent;
  double sigma_factor = 0.05;
};

std::span<const ScenarioPreset> scenario_presets();
const ScenarioPreset* find_preset(std::string_view name);
SimulationConfig config_from_preset(const ScenarioPreset& preset);

// Flat key-value JSON mirroring SimulationConfig.
std::string config_to_json_text(const SimulationConfig& config);
SimulationConfig config_from_json_text(const std::string& text);
// Accepts either a flat config file or a previously written manifest.json
// (whose "config" object is then used).
SimulationConfig load_config_file(const std::filesystem::path& path);

// Shortest round-trip decimal representation; locale independent.
std::string format_double(double value);

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = "out";
  bool write_traces = false;
  std::optional<int> replications;
  std::optional<int> periods;
  int threads = 0;  // 0 = hardware concurrency
};

// Runs one scenario and writes manifest.json, phi.csv, report.json and
// (optionally) traces.csv into opts.out_dir. Returns the batch summary.
ScenarioResult run_scenario(SimulationConfig config, const RunOptions& opts);

// Runs all eight presets with per-scenario seeds derived from master_seed,
// writing each scenario's artifacts into a subdirectory plus the combined
// comparisons.json and plotdata/ series files.
void run_all(std::uint64_t master_seed, const RunOptions& opts);

}  // namespace agency
