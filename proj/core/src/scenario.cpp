#include "agency/scenario.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "agency/rng.hpp"
#include "agency/version.hpp"

namespace agency {
namespace {

using nlohmann::json;

const std::array<ScenarioPreset, 8> kPresets = {{
    // Agent has the information advantage: m_A unlimited, m_P limited.
    {"agent-adv/mP1/stable", 1, std::nullopt, 0.05},
    {"agent-adv/mP1/unstable", 1, std::nullopt, 0.45},
    {"agent-adv/mP5/stable", 5, std::nullopt, 0.05},
    {"agent-adv/mP5/unstable", 5, std::nullopt, 0.45},
    // Principal has the information advantage: m_P unlimited, m_A limited.
    {"principal-adv/mA1/stable", std::nullopt, 1, 0.05},
    {"principal-adv/mA1/unstable", std::nullopt, 1, 0.45},
    {"principal-adv/mA5/stable", std::nullopt, 5, 0.05},
    {"principal-adv/mA5/unstable", std::nullopt, 5, 0.45},
}};

std::string sanitize(std::string_view name) {
  std::string out(name);
  for (char& c : out)
    if (c == '/') c = '_';
  return out;
}

json memory_to_json(const std::optional<std::size_t>& m) {
  if (!m) return json("inf");
  return json(*m);
}

std::optional<std::size_t> memory_from_json(const json& j, const char* key) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "unlimited") return std::nullopt;
    throw UsageError(std::string("bad value for ") + key + ": " + s);
  }
  const auto v = j.get<long long>();
  if (v < 1) throw UsageError(std::string(key) + " must be >= 1 or \"inf\"");
  return static_cast<std::size_t>(v);
}

template <typename T>
void read_if(const json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

json config_to_json(const SimulationConfig& c) {
  json j;
  j["label"] = c.label;
  j["eta"] = c.params.eta;
  j["sigma_factor"] = c.params.sigma_factor;
  j["theta_mean"] = c.params.theta_mean;
  j["premium_lo"] = c.params.premium_lo;
  j["premium_hi"] = c.params.premium_hi;
  j["reservation_utility"] = c.params.reservation_utility;
  j["premium_grid_n"] = c.params.premium_grid_n;
  j["candidate_count"] = c.params.candidate_count;
  j["sigma_calibration"] =
      c.params.sigma_calibration == SigmaCalibration::kFixedPoint ? "fixed-point"
                                                                  : "one-shot";
  j["candidate_law"] =
      c.params.candidate_law == CandidateLaw::kUniform ? "uniform" : "local-normal";
  j["initial_belief"] = c.params.initial_belief;
  j["effort_tolerance"] = c.params.effort_tolerance;
  j["periods"] = c.periods;
  j["replications"] = c.replications;
  j["memory_principal"] = memory_to_json(c.memory_principal);
  j["memory_agent"] = memory_to_json(c.memory_agent);
  j["master_seed"] = c.master_seed;
  switch (c.initial_effort_rule) {
    case InitialEffortRule::kUniformRandom:
      j["initial_incited_effort_rule"] = "uniform-random";
      break;
    case InitialEffortRule::kZero:
      j["initial_incited_effort_rule"] = "zero";
      break;
    case InitialEffortRule::kMidpoint:
      j["initial_incited_effort_rule"] = "midpoint";
      break;
  }
  j["alpha"] = c.alpha;
  j["ttest_mode"] = c.ttest_mode == TTestMode::kWelch ? "welch" : "paired";
  return j;
}

SimulationConfig config_from_json(const json& j) {
  SimulationConfig c;
  read_if(j, "label", c.label);
  read_if(j, "eta", c.params.eta);
  read_if(j, "sigma_factor", c.params.sigma_factor);
  read_if(j, "theta_mean", c.params.theta_mean);
  read_if(j, "premium_lo", c.params.premium_lo);
  read_if(j, "premium_hi", c.params.premium_hi);
  read_if(j, "reservation_utility", c.params.reservation_utility);
  read_if(j, "premium_grid_n", c.params.premium_grid_n);
  read_if(j, "candidate_count", c.params.candidate_count);
  if (j.contains("sigma_calibration")) {
    const auto s = j.at("sigma_calibration").get<std::string>();
    if (s == "fixed-point")
      c.params.sigma_calibration = SigmaCalibration::kFixedPoint;
    else if (s == "one-shot")
      c.params.sigma_calibration = SigmaCalibration::kOneShot;
    else
      throw UsageError("bad sigma_calibration: " + s);
  }
  if (j.contains("candidate_law")) {
    const auto s = j.at("candidate_law").get<std::string>();
    if (s == "uniform")
      c.params.candidate_law = CandidateLaw::kUniform;
    else if (s == "local-normal")
      c.params.candidate_law = CandidateLaw::kLocalNormal;
    else
      throw UsageError("bad candidate_law: " + s);
  }
  read_if(j, "initial_belief", c.params.initial_belief);
  read_if(j, "effort_tolerance", c.params.effort_tolerance);
  read_if(j, "periods", c.periods);
  read_if(j, "replications", c.replications);
  if (j.contains("memory_principal"))
    c.memory_principal = memory_from_json(j.at("memory_principal"), "memory_principal");
  if (j.contains("memory_agent"))
    c.memory_agent = memory_from_json(j.at("memory_agent"), "memory_agent");
  read_if(j, "master_seed", c.master_seed);
  if (j.contains("initial_incited_effort_rule")) {
    const auto s = j.at("initial_incited_effort_rule").get<std::string>();
    if (s == "uniform-random")
      c.initial_effort_rule = InitialEffortRule::kUniformRandom;
    else if (s == "zero")
      c.initial_effort_rule = InitialEffortRule::kZero;
    else if (s == "midpoint")
      c.initial_effort_rule = InitialEffortRule::kMidpoint;
    else
      throw UsageError("bad initial_incited_effort_rule: " + s);
  }
  read_if(j, "alpha", c.alpha);
  if (j.contains("ttest_mode")) {
    const auto s = j.at("ttest_mode").get<std::string>();
    if (s == "welch")
      c.ttest_mode = TTestMode::kWelch;
    else if (s == "paired")
      c.ttest_mode = TTestMode::kPaired;
    else
      throw UsageError("bad ttest_mode: " + s);
  }
  return c;
}

json benchmark_to_json(const SecondBestSolution& b) {
  return json{{"a_star", b.a_star},          {"p_star", b.p_star},
              {"x_star", b.x_star},          {"sigma_used", b.sigma_used},
              {"principal_eu", b.principal_eu}, {"agent_eu", b.agent_eu}};
}

json optional_period_to_json(const std::optional<int>& p) {
  if (!p) return json(nullptr);
  return json(*p);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create output directory " + dir.string());
}

std::string phi_csv_text(const ScenarioResult& result) {
  std::ostringstream out;
  out << "t,phi,sd,n\n";
  for (std::size_t t = 0; t < result.phi.size(); ++t) {
    out << (t + 1) << ',' << format_double(result.phi[t]) << ','
        << format_double(result.per_period_sd[t]) << ','
        << result.normalized_efforts.replications << '\n';
  }
  return out.str();
}

std::string traces_csv_text(std::span<const RunTrace> traces) {
  std::ostringstream out;
  out << "rep,t,incited_effort,premium,effort,theta,outcome,compensation,"
         "u_principal,u_agent,belief_p,belief_a\n";
  for (std::size_t r = 0; r < traces.size(); ++r) {
    for (const PeriodRecord& rec : traces[r].periods) {
      out << (r + 1) << ',' << rec.t << ',' << format_double(rec.incited_effort)
          << ',' << format_double(rec.premium) << ','
          << format_double(rec.exerted_effort) << ','
          << format_double(rec.theta_realized) << ',' << format_double(rec.outcome)
          << ',' << format_double(rec.compensation) << ','
          << format_double(rec.principal_utility) << ','
          << format_double(rec.agent_utility) << ','
          << format_double(rec.principal_belief) << ','
          << format_double(rec.agent_belief) << '\n';
    }
  }
  return out.str();
}

std::string manifest_text(const SimulationConfig& config,
                          const SecondBestSolution& benchmark) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = config_to_json(config);
  j["seed"] = config.master_seed;
  j["sigma"] = benchmark.sigma_used;
  j["benchmark"] = benchmark_to_json(benchmark);
  return j.dump(2) + "\n";
}

std::string report_text(const ScenarioResult& result, double alpha) {
  json j;
  j["label"] = result.label;
  j["final_phi"] = result.phi.back();
  j["pooled_sd"] = result.pooled_sd;
  j["mean_period_sd"] = mean_per_period_sd(result.normalized_efforts);
  j["stability_period"] = optional_period_to_json(result.stability_period);
  j["alpha"] = alpha;
  return j.dump(2) + "\n";
}

SimulationConfig apply_overrides(SimulationConfig config, const RunOptions& opts) {
  if (opts.seed) config.master_seed = *opts.seed;
  if (opts.replications) config.replications = *opts.replications;
  if (opts.periods) config.periods = *opts.periods;
  return config;
}

ScenarioResult run_and_write(const SimulationConfig& config,
                             const std::filesystem::path& dir, bool write_traces,
                             int threads) {
  ensure_directory(dir);
  const SecondBestSolution benchmark = calibrate_sigma(config.params);
  BatchRun batch = run_batch_with(config, benchmark, threads, write_traces);

  write_text_file(dir / "manifest.json", manifest_text(config, benchmark));
  write_text_file(dir / "phi.csv", phi_csv_text(batch.result));
  write_text_file(dir / "report.json", report_text(batch.result, config.alpha));
  if (write_traces)
    write_text_file(dir / "traces.csv", traces_csv_text(batch.traces));
  return std::move(batch.result);
}

}  // namespace

std::span<const ScenarioPreset> scenario_presets() { return kPresets; }

const ScenarioPreset* find_preset(std::string_view name) {
  for (const auto& preset : kPresets)
    if (preset.name == name) return &preset;
  return nullptr;
}

SimulationConfig config_from_preset(const ScenarioPreset& preset) {
  SimulationConfig config;
  config.label = preset.name;
  config.params.sigma_factor = preset.sigma_factor;
  config.memory_principal = preset.memory_principal;
  config.memory_agent = preset.memory_agent;
  return config;
}

std::string config_to_json_text(const SimulationConfig& config) {
  return config_to_json(config).dump(2) + "\n";
}

SimulationConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return config_from_json(j);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
}

SimulationConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  json j;
  try {
    j = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw UsageError(path.string() + " is not valid JSON: " + e.what());
  }
  // A manifest written by a previous run carries the config as a sub-object.
  const json& cfg = j.contains("config") ? j.at("config") : j;
  try {
    return config_from_json(cfg);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
}

std::string format_double(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

ScenarioResult run_scenario(SimulationConfig config, const RunOptions& opts) {
  config = apply_overrides(std::move(config), opts);
  config.validate();
  return run_and_write(config, opts.out_dir, opts.write_traces, opts.threads);
}

void run_all(std::uint64_t master_seed, const RunOptions& opts) {
  ensure_directory(opts.out_dir);
  std::vector<ScenarioResult> results;
  results.reserve(kPresets.size());

  for (std::size_t i = 0; i < kPresets.size(); ++i) {
    SimulationConfig config = config_from_preset(kPresets[i]);
    config.master_seed = derive_seed(master_seed, i);
    if (opts.replications) config.replications = *opts.replications;
    if (opts.periods) config.periods = *opts.periods;
    config.validate();
    results.push_back(run_and_write(config, opts.out_dir / sanitize(kPresets[i].name),
                                    opts.write_traces, opts.threads));
  }

  // The four memory-length comparisons the experiment is about: within each
  // advantage regime, m = 1 vs m = 5, per environment.
  const double alpha = 0.01;
  json comparisons = json::array();
  const std::array<std::array<std::size_t, 2>, 4> pairs = {{
      {0, 2},  // agent-adv stable: mP1 vs mP5
      {1, 3},  // agent-adv unstable
      {4, 6},  // principal-adv stable: mA1 vs mA5
      {5, 7},  // principal-adv unstable
  }};
  for (const auto& [i1, i5] : pairs) {
    const ComparisonReport rep = compare_scenarios(results[i1], results[i5], alpha);
    json c;
    c["scenario_m1"] = results[i1].label;
    c["scenario_m5"] = results[i5].label;
    c["final_phi_m1"] = rep.final_phi_a;
    c["final_phi_m5"] = rep.final_phi_b;
    c["final_diff_m5_minus_m1"] = rep.final_phi_b - rep.final_phi_a;
    c["final_welch"] = {{"t_stat", rep.final_welch.t_stat},
                        {"df", rep.final_welch.df},
                        {"p_value", rep.final_welch.p_value},
                        {"reject", rep.final_welch.reject}};
    c["pooled_f"] = {{"f_stat", rep.pooled_f.f_stat},
                     {"df_num", rep.pooled_f.df_num},
                     {"df_den", rep.pooled_f.df_den},
                     {"p_value", rep.pooled_f.p_value},
                     {"reject", rep.pooled_f.reject}};
    c["pooled_sd_m1"] = rep.pooled_sd_a;
    c["pooled_sd_m5"] = rep.pooled_sd_b;
    c["stability_m1"] = optional_period_to_json(rep.onset_a);
    c["stability_m5"] = optional_period_to_json(rep.onset_b);
    comparisons.push_back(std::move(c));
  }

  json onsets;
  for (const auto& result : results)
    onsets[result.label] = optional_period_to_json(result.stability_period);

  json top;
  top["alpha"] = alpha;
  top["comparisons"] = std::move(comparisons);
  top["stability_onsets"] = std::move(onsets);
  write_text_file(opts.out_dir / "comparisons.json", top.dump(2) + "\n");

  const auto plotdir = opts.out_dir / "plotdata";
  ensure_directory(plotdir);
  for (const auto& result : results) {
    std::ostringstream out;
    for (std::size_t t = 0; t < result.phi.size(); ++t)
      out << (t + 1) << ' ' << format_double(result.phi[t]) << '\n';
    write_text_file(plotdir / (sanitize(result.label) + ".dat"), out.str());
  }
}

}  // namespace agency
