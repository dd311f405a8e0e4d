#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "agency/scenario.hpp"
#include "agency/version.hpp"

namespace {

int threads_from_env() {
  const char* raw = std::getenv("SIM_THREADS");
  if (!raw || !*raw) return 0;
  try {
    const int n = std::stoi(raw);
    return n > 0 ? n : 0;
  } catch (...) {
    return 0;
  }
}

void print_benchmark(const agency::SecondBestSolution& sol) {
  std::cout << "a_star " << agency::format_double(sol.a_star) << '\n'
            << "p_star " << agency::format_double(sol.p_star) << '\n'
            << "x_star " << agency::format_double(sol.x_star) << '\n'
            << "sigma " << agency::format_double(sol.sigma_used) << '\n'
            << "principal_eu " << agency::format_double(sol.principal_eu) << '\n'
            << "agent_eu " << agency::format_double(sol.agent_eu) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hidden-action delegation simulator"};
  app.set_version_flag("--version",
                       std::string(agency::kToolName) + " " + agency::kToolVersion);
  app.require_subcommand(1);

  // ---- run ----
  auto* run = app.add_subcommand("run", "Run one scenario preset or config file");
  std::string preset_name;
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir = "out";
  bool traces = false;
  std::optional<int> replications;
  std::optional<int> periods;
  run->add_option("preset", preset_name, "Scenario preset name (see `list`)");
  run->add_option("--config", config_path, "JSON config file (or a manifest.json)");
  run->add_option("--seed", seed, "Master seed override")->each([&](const std::string&) {
    seed_set = true;
  });
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_flag("--traces", traces, "Also write traces.csv (one row per replication-period)");
  run->add_option("--replications", replications, "Override replication count");
  run->add_option("--periods", periods, "Override period count");

  // ---- run-all ----
  auto* run_all_cmd = app.add_subcommand("run-all", "Run all 8 presets and compare them");
  std::uint64_t all_seed = 42;
  std::string all_out = "out";
  bool all_traces = false;
  std::optional<int> all_replications;
  std::optional<int> all_periods;
  run_all_cmd->add_option("--seed", all_seed, "Master seed")->capture_default_str();
  run_all_cmd->add_option("--out", all_out, "Output directory")->capture_default_str();
  run_all_cmd->add_flag("--traces", all_traces, "Also write traces.csv per scenario");
  run_all_cmd->add_option("--replications", all_replications, "Override replication count");
  run_all_cmd->add_option("--periods", all_periods, "Override period count");

  // ---- benchmark ----
  auto* bench = app.add_subcommand("benchmark", "Print the second-best solution");
  double eta = 0.5;
  double sigma_factor = 0.05;
  bool one_shot = false;
  bench->add_option("--eta", eta, "Risk-aversion coefficient")->capture_default_str();
  bench->add_option("--sigma-factor", sigma_factor, "Noise sd as fraction of x*")
      ->capture_default_str();
  bench->add_flag("--one-shot", one_shot,
                  "Scale sigma from the sigma=0 solution instead of fixed-point iteration");

  // ---- list ----
  auto* list = app.add_subcommand("list", "List scenario presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return agency::kExitUsage;
  }

  try {
    if (list->parsed()) {
      for (const auto& preset : agency::scenario_presets())
        std::cout << preset.name << '\n';
      return agency::kExitOk;
    }

    if (run->parsed()) {
      if (preset_name.empty() == config_path.empty())
        throw agency::UsageError("provide exactly one of <preset> or --config FILE");
      agency::SimulationConfig config;
      if (!preset_name.empty()) {
        const auto* preset = agency::find_preset(preset_name);
        if (!preset) throw agency::UsageError("unknown preset: " + preset_name);
        config = agency::config_from_preset(*preset);
      } else {
        config = agency::load_config_file(config_path);
      }
      agency::RunOptions opts;
      if (seed_set) opts.seed = seed;
      opts.out_dir = out_dir;
      opts.write_traces = traces;
      opts.replications = replications;
      opts.periods = periods;
      opts.threads = threads_from_env();
      const auto result = agency::run_scenario(std::move(config), opts);
      std::cout << result.label << ": final phi "
                << agency::format_double(result.phi.back()) << ", pooled sd "
                << agency::format_double(result.pooled_sd) << ", stability ";
      if (result.stability_period)
        std::cout << "t=" << *result.stability_period;
      else
        std::cout << "none";
      std::cout << " -> " << out_dir << '\n';
      return agency::kExitOk;
    }

    if (run_all_cmd->parsed()) {
      agency::RunOptions opts;
      opts.out_dir = all_out;
      opts.write_traces = all_traces;
      opts.replications = all_replications;
      opts.periods = all_periods;
      opts.threads = threads_from_env();
      agency::run_all(all_seed, opts);
      std::cout << "8 scenarios -> " << all_out << '\n';
      return agency::kExitOk;
    }

    if (bench->parsed()) {
      agency::ModelParams params;
      params.eta = eta;
      params.sigma_factor = sigma_factor;
      if (one_shot) params.sigma_calibration = agency::SigmaCalibration::kOneShot;
      print_benchmark(agency::calibrate_sigma(params));
      return agency::kExitOk;
    }
  } catch (const agency::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return agency::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return agency::kExitUsage;
  } catch (const agency::CalibrationError& e) {
    std::cerr << "calibration error: " << e.what() << '\n';
    return agency::kExitCalibration;
  } catch (const agency::InfeasibleProblem& e) {
    std::cerr << "calibration error: " << e.what() << '\n';
    return agency::kExitCalibration;
  } catch (const agency::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return agency::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return agency::kExitFailure;
  }
  return agency::kExitOk;
}
