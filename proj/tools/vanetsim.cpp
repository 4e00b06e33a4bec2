#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vanet/analysis.hpp"
#include "vanet/csv.hpp"
#include "vanet/engine.hpp"
#include "vanet/mobility.hpp"
#include "vanet/sim_config.hpp"
#include "vanet/theory.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  std::size_t jobs = 1;
  std::vector<std::string> sets;  // key=value overrides
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "simulation config file (key = value lines)");
  cmd->add_option("--seed", opts.seed, "master seed, overrides the config file");
  cmd->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--jobs", opts.jobs, "parallel sweep jobs; results do not depend on it")
      ->capture_default_str();
  cmd->add_option("--set", opts.sets,
                  "override one config field, e.g. --set p=0.25 (repeatable; flags beat file "
                  "values)");
}

// File values first, then --set pairs, then --seed. Validated before use.
vanet::SimConfig effective_config(const CommonOpts& opts) {
  vanet::SimConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = vanet::parse_config_file(opts.config_path);
  }
  for (const std::string& kv : opts.sets) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      throw vanet::ConfigError(kv, "--set expects key=value");
    }
    vanet::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (opts.seed) cfg.seed = *opts.seed;
  cfg.validate();
  return cfg;
}

std::string provenance(const std::string& command, const vanet::SimConfig& cfg) {
  return "vanetsim v" + std::string(kToolVersion) + " " + command + " | " + cfg.summary();
}

json config_json(const vanet::SimConfig& cfg) {
  json j = json::object();
  for (const auto& [key, value] : cfg.to_key_values()) j[key] = value;
  return j;
}

// Checks every referenced output, then writes the manifest itself.
void write_manifest(const fs::path& out_dir, const std::string& command, const json& config,
                    const json& params, std::uint64_t seed,
                    const std::vector<std::string>& outputs, double duration_seconds) {
  for (const std::string& rel : outputs) {
    if (!fs::exists(out_dir / rel)) {
      throw std::runtime_error("output file missing: " + (out_dir / rel).string());
    }
  }
  json manifest;
  manifest["tool"] = "vanetsim";
  manifest["version"] = kToolVersion;
  manifest["command"] = command;
  manifest["config"] = config;
  if (!params.empty()) manifest["params"] = params;
  manifest["seed"] = seed;
  manifest["outputs"] = outputs;
  manifest["duration_seconds"] = duration_seconds;
  std::ofstream out(out_dir / "manifest.json");
  if (!out) {
    throw std::runtime_error("cannot write manifest to " + out_dir.string());
  }
  out << manifest.dump(2) << "\n";
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_ = Clock::now();
};

int cmd_grow(const CommonOpts& opts) {
  const Stopwatch timer;
  const vanet::SimConfig cfg = effective_config(opts);
  fs::create_directories(opts.out_dir);
  const vanet::RunResult result = vanet::run(cfg);
  const std::string prov = provenance("grow", cfg);

  vanet::write_metrics_csv((fs::path(opts.out_dir) / "metrics.csv").string(), result.metrics,
                           prov);
  vanet::save_topology(result.state.graph, result.state.registry,
                       (fs::path(opts.out_dir) / "topology.txt").string(), prov);
  vanet::write_histogram_csv(
      (fs::path(opts.out_dir) / "degree_histogram.csv").string(),
      vanet::degree_histogram(result.state.graph, vanet::Binning::Log), prov);

  write_manifest(opts.out_dir, "grow", config_json(cfg), json::object(), cfg.seed,
                 {"metrics.csv", "topology.txt", "degree_histogram.csv"}, timer.seconds());
  return 0;
}

int cmd_attack(const CommonOpts& opts, const std::vector<double>& p_list,
               const std::vector<double>& f_list, int trials) {
  const Stopwatch timer;
  const vanet::SimConfig cfg = effective_config(opts);
  fs::create_directories(opts.out_dir);
  const auto rows = vanet::attack_sweep(cfg, p_list, f_list, trials, opts.jobs);
  vanet::write_attack_csv((fs::path(opts.out_dir) / "attack_sweep.csv").string(), rows,
                          provenance("attack", cfg));
  json params;
  params["p_list"] = p_list;
  params["f_list"] = f_list;
  params["trials"] = trials;
  params["jobs"] = opts.jobs;
  write_manifest(opts.out_dir, "attack", config_json(cfg), params, cfg.seed,
                 {"attack_sweep.csv"}, timer.seconds());
  return 0;
}

int cmd_paths(const CommonOpts& opts, const std::vector<double>& p_list,
              const std::vector<int>& m_list, int window) {
  const Stopwatch timer;
  const vanet::SimConfig cfg = effective_config(opts);
  fs::create_directories(opts.out_dir);
  const auto rows = vanet::apl_sweep(cfg, p_list, m_list, window, opts.jobs);
  vanet::write_apl_csv((fs::path(opts.out_dir) / "apl_sweep.csv").string(), rows,
                       provenance("paths", cfg));
  json params;
  params["p_list"] = p_list;
  params["m_list"] = m_list;
  params["window"] = window;
  params["jobs"] = opts.jobs;
  write_manifest(opts.out_dir, "paths", config_json(cfg), params, cfg.seed, {"apl_sweep.csv"},
                 timer.seconds());
  return 0;
}

int cmd_theory(const std::string& out_dir, int m, const std::vector<double>& p_list, int k_max) {
  const Stopwatch timer;
  if (m < 1) throw vanet::ConfigError("m", "must be >= 1");
  if (k_max < m) throw vanet::ConfigError("k_max", "must be >= m");
  for (double p : p_list) {
    if (p < 0.0 || p > 1.0) throw vanet::ConfigError("p", "must lie in [0, 1]");
  }
  fs::create_directories(out_dir);
  std::vector<std::string> outputs;
  for (double p : p_list) {
    const std::string name = "theory_p" + vanet::csv_double(p) + ".csv";
    vanet::write_theory_csv((fs::path(out_dir) / name).string(), m, p, k_max,
                            "vanetsim v" + std::string(kToolVersion) + " theory | m=" +
                                std::to_string(m) + " p=" + vanet::csv_double(p) +
                                " k_max=" + std::to_string(k_max));
    outputs.push_back(name);
  }
  json params;
  params["m"] = m;
  params["p_list"] = p_list;
  params["k_max"] = k_max;
  write_manifest(out_dir, "theory", json::object(), params, 0, outputs, timer.seconds());
  return 0;
}

int cmd_trace_gen(const vanet::GridTraceConfig& gtc, const std::string& out_file) {
  const vanet::MobilityTrace trace = vanet::generate_grid_trace(gtc);
  if (const fs::path parent = fs::path(out_file).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  vanet::save_trace(trace, out_file,
                    "vanetsim v" + std::string(kToolVersion) + " trace-gen | rows=" +
                        std::to_string(gtc.rows) + " cols=" + std::to_string(gtc.cols) +
                        " block_m=" + vanet::csv_double(gtc.block_m) +
                        " n_per_step=" + std::to_string(gtc.n_per_step) +
                        " steps=" + std::to_string(gtc.steps) +
                        " speed_mps=" + vanet::csv_double(gtc.speed_mps) +
                        " seed=" + std::to_string(gtc.seed));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schedulable degree-distribution VANET topology simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("vanetsim v") + kToolVersion);

  CommonOpts grow_opts;
  CLI::App* grow = app.add_subcommand("grow", "grow one topology and write per-step metrics");
  add_common(grow, grow_opts);  // a single run is sequential, --jobs has no effect

  CommonOpts attack_opts;
  std::vector<double> attack_p;
  std::vector<double> attack_f = {0.05, 0.10, 0.20};
  int attack_trials = 10;
  CLI::App* attack =
      app.add_subcommand("attack", "LCC robustness under random and targeted attacks");
  add_common(attack, attack_opts);
  attack->add_option("--p", attack_p, "hybrid attachment probabilities to sweep")->required();
  attack->add_option("--f", attack_f, "attack intensities in (0,1)")->capture_default_str();
  attack->add_option("--trials", attack_trials, "seeds per sweep cell")->capture_default_str();

  CommonOpts paths_opts;
  std::vector<double> paths_p;
  std::vector<int> paths_m;
  int paths_window = 10;
  CLI::App* paths = app.add_subcommand("paths", "average path length vs p and m");
  add_common(paths, paths_opts);
  paths->add_option("--p", paths_p, "hybrid attachment probabilities to sweep")->required();
  paths->add_option("--m", paths_m, "links-per-arrival values to sweep")->required();
  paths->add_option("--window", paths_window, "final steps averaged per cell")
      ->capture_default_str();

  std::string theory_out = "out";
  int theory_m = 2;
  int theory_kmax = 100;
  std::vector<double> theory_p;
  CLI::App* theory = app.add_subcommand("theory", "closed-form degree pdf tables");
  theory->add_option("--m", theory_m, "links per new node")->capture_default_str();
  theory->add_option("--p", theory_p, "p values; 0 and 1 select the boundary regimes")
      ->required();
  theory->add_option("--k-max", theory_kmax, "largest degree to tabulate")
      ->capture_default_str();
  theory->add_option("--out", theory_out, "output directory")->capture_default_str();

  vanet::GridTraceConfig gtc;
  std::string trace_out;
  CLI::App* trace_gen = app.add_subcommand("trace-gen", "synthetic road-grid mobility trace");
  trace_gen->add_option("--rows", gtc.rows, "grid rows")->capture_default_str();
  trace_gen->add_option("--cols", gtc.cols, "grid cols")->capture_default_str();
  trace_gen->add_option("--block", gtc.block_m, "block edge length in meters")
      ->capture_default_str();
  trace_gen->add_option("--n-per-step", gtc.n_per_step, "arrivals per step")
      ->capture_default_str();
  trace_gen->add_option("--steps", gtc.steps, "trace length in steps")->capture_default_str();
  trace_gen->add_option("--speed", gtc.speed_mps, "vehicle speed in m/s")
      ->capture_default_str();
  trace_gen->add_option("--seed", gtc.seed, "trace seed")->capture_default_str();
  trace_gen->add_option("--out-file", trace_out, "trace file to write")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (grow->parsed()) return cmd_grow(grow_opts);
    if (attack->parsed()) return cmd_attack(attack_opts, attack_p, attack_f, attack_trials);
    if (paths->parsed()) return cmd_paths(paths_opts, paths_p, paths_m, paths_window);
    if (theory->parsed()) return cmd_theory(theory_out, theory_m, theory_p, theory_kmax);
    if (trace_gen->parsed()) return cmd_trace_gen(gtc, trace_out);
  } catch (const vanet::ConfigError& e) {
    std::cerr << "vanetsim: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "vanetsim: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
