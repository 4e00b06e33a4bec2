// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vanet/analysis.hpp"
#include "vanet/attachment.hpp"
#include "vanet/engine.hpp"
#include "vanet/graph.hpp"
#include "vanet/rng.hpp"
#include "vanet/theory.hpp"

#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace vanet;

namespace {

constexpr std::uint64_t kMasterSeed = 1;

struct Check {
  std::string label;
  bool ok;
};

struct Outcome {
  bool passed = true;
  std::vector<Check> checks;

  void require(const std::string& label, bool ok) {
    checks.push_back({label, ok});
    passed = passed && ok;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// ---------------------------------------------------------------- criteria

Outcome criterion_probability_identity() {
  Outcome out;
  Rng rng(derive_seed(kMasterSeed, "identity"));
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    LocalWorld lw;
    std::uint64_t sum = 0;
    do {
      lw.members.clear();
      sum = 0;
      const std::size_t size = 1 + rng.uniform_index(50);
      for (std::size_t i = 0; i < size; ++i) {
        const auto deg = static_cast<std::uint32_t>(rng.uniform_index(101));
        lw.members.push_back({static_cast<NodeId>(i), deg});
        sum += deg;
      }
    } while (sum == 0);
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      double total = 0.0;
      for (std::size_t i = 0; i < lw.size(); ++i) total += hybrid_prob(lw, p, i);
      worst = std::max(worst, std::abs(total - 1.0));
    }
  }
  out.require("max |sum - 1| = " + fmt(worst) + " <= 1e-9 over 1000 worlds x 5 p", worst <= 1e-9);
  return out;
}

Outcome criterion_pdf_normalization() {
  Outcome out;
  double worst = 0.0;
  for (int m : {1, 2, 3}) {
    const double e = oracle::integrate_to_infinity(
        [m](double k) { return theory::exponential_pdf(k, m); }, m);
    const double pl = oracle::integrate_to_infinity(
        [m](double k) { return theory::powerlaw_pdf(k, m); }, m);
    worst = std::max({worst, std::abs(e - 1.0), std::abs(pl - 1.0)});
    for (double p : {0.1, 0.5, 0.9}) {
      const double tun = oracle::integrate_to_infinity(
          [m, p](double k) { return theory::tunable_pdf(k, m, p); }, m);
      worst = std::max(worst, std::abs(tun - 1.0));
    }
  }
  out.require("max |integral - 1| = " + fmt(worst) + " <= 1e-3 (15 pdfs)", worst <= 1e-3);
  return out;
}

Outcome criterion_exponent_formula() {
  Outcome out;
  bool exact = true;
  for (int m : {1, 2, 3}) {
    exact = exact && theory::tunable_params(m, 0.5).gamma == 5.0;
  }
  out.require("gamma(m, p=0.5) == 5.0 exactly", exact);

  bool increasing = true;
  double prev = -1.0;
  for (int i = 1; i <= 99; ++i) {
    const double g = theory::tunable_params(2, i / 100.0).gamma;
    increasing = increasing && g > prev;
    prev = g;
  }
  out.require("gamma strictly increasing over 99 p values", increasing);
  return out;
}

Outcome criterion_trajectory_limits() {
  Outcome out;
  double worst_low = 0.0;
  double worst_high = 0.0;
  for (double ratio = 1.0; ratio <= 100.0; ratio *= 1.03) {
    const double near0 = theory::degree_trajectory(ratio, 1.0, 2, 1e-3, 0);
    const double at0 = theory::degree_trajectory(ratio, 1.0, 2, 0.0, 0);
    worst_low = std::max(worst_low, std::abs(near0 - at0) / at0);

    const double near1 = theory::degree_trajectory(ratio, 1.0, 2, 0.999, 0);
    const double at1 = theory::degree_trajectory(ratio, 1.0, 2, 1.0, 0);
    worst_high = std::max(worst_high, std::abs(near1 - at1) / at1);
  }
  out.require("p=1e-3 vs p=0: max rel err " + fmt(worst_low) + " <= 0.5%", worst_low <= 0.005);
  out.require("p=0.999 vs p=1: max rel err " + fmt(worst_high) + " <= 1%", worst_high <= 0.01);
  return out;
}

std::vector<std::uint32_t> pooled_final_degrees(double p, int seeds) {
  std::vector<std::uint32_t> degrees;
  for (int s = 0; s < seeds; ++s) {
    SimConfig cfg;
    cfg.p = p;
    cfg.m = 2;
    cfg.m0 = 5;
    cfg.steps = 5000;
    cfg.seed = derive_seed(derive_seed(kMasterSeed, "regimes"), static_cast<std::uint64_t>(s));
    const RunResult result = run(cfg);
    for (NodeId id : result.state.graph.sorted_nodes()) {
      degrees.push_back(result.state.graph.degree(id));
    }
  }
  return degrees;
}

Outcome criterion_degree_regimes() {
  Outcome out;
  const double k_min = 4.0;
  const int seeds = 10;

  const auto pl = fit_tail(histogram_from_degrees(pooled_final_degrees(0.0, seeds), Binning::Log),
                           FitModel::PowerLaw, k_min);
  out.require("p=0: fitted gamma = " + fmt(pl.parameter) + " in [2.6, 3.4]",
              pl.parameter >= 2.6 && pl.parameter <= 3.4);

  const double shift = theory::tunable_params(2, 0.5).a;  // 4
  const auto tun =
      fit_tail(histogram_from_degrees(pooled_final_degrees(0.5, seeds), Binning::Log),
               FitModel::ShiftedPowerLaw, k_min, shift);
  out.require("p=0.5: shifted fit (a=4) gamma = " + fmt(tun.parameter) + " in [4.0, 6.0]",
              tun.parameter >= 4.0 && tun.parameter <= 6.0);

  const auto ex =
      fit_tail(histogram_from_degrees(pooled_final_degrees(1.0, seeds), Binning::Log),
               FitModel::Exponential, k_min);
  out.require("p=1: fitted rate = " + fmt(ex.parameter) + " in [0.425, 0.575]",
              ex.parameter >= 0.425 && ex.parameter <= 0.575);
  return out;
}

const std::vector<AttackSweepRow>& shared_attack_rows() {
  static const std::vector<AttackSweepRow> rows = [] {
    SimConfig cfg;
    cfg.m = 2;
    cfg.m0 = 5;
    cfg.steps = 500;  // ~505 nodes
    cfg.seed = derive_seed(kMasterSeed, "attack");
    const std::vector<double> ps = {0.0, 0.5, 1.0};
    const std::vector<double> fs = {0.05, 0.2};
    return attack_sweep(cfg, ps, fs, 10, 2);
  }();
  return rows;
}

double sweep_mean(const std::vector<AttackSweepRow>& rows, double p, AttackStrategy strategy,
                  double f) {
  for (const auto& row : rows) {
    if (row.p == p && row.strategy == strategy && row.f == f) return row.mean_lcc_after;
  }
  throw std::logic_error("sweep row not found");
}

Outcome criterion_random_attack() {
  Outcome out;
  const auto& rows = shared_attack_rows();
  for (double p : {0.0, 0.5, 1.0}) {
    const double mean = sweep_mean(rows, p, AttackStrategy::Random, 0.05);
    out.require("random f=0.05, p=" + fmt(p) + ": mean lcc_after = " + fmt(mean) + " >= 0.9",
                mean >= 0.9);
  }
  return out;
}

Outcome criterion_targeted_attack_scheduling() {
  Outcome out;
  const auto& rows = shared_attack_rows();
  const double at0 = sweep_mean(rows, 0.0, AttackStrategy::Targeted, 0.2);
  const double at1 = sweep_mean(rows, 1.0, AttackStrategy::Targeted, 0.2);
  out.require("targeted f=0.2: lcc(p=1) - lcc(p=0) = " + fmt(at1 - at0) + " > 0.05",
              at1 - at0 > 0.05);
  return out;
}

Outcome criterion_apl_monotonicity() {
  Outcome out;
  const std::vector<double> ps = {0.0, 1.0};
  const std::vector<int> ms = {1, 2, 3};
  const int seeds = 10;
  double mean_apl[2][3] = {};
  for (int s = 0; s < seeds; ++s) {
    SimConfig cfg;
    cfg.m0 = 5;
    cfg.steps = 500;
    cfg.seed = derive_seed(derive_seed(kMasterSeed, "apl"), static_cast<std::uint64_t>(s));
    for (const AplSweepRow& row : apl_sweep(cfg, ps, ms, 10, 2)) {
      mean_apl[row.p == 1.0 ? 1 : 0][row.m - 1] += row.mean_apl / seeds;
    }
  }
  for (int mi = 0; mi < 3; ++mi) {
    out.require("m=" + std::to_string(mi + 1) + ": APL(p=1) = " + fmt(mean_apl[1][mi]) +
                    " >= APL(p=0) = " + fmt(mean_apl[0][mi]),
                mean_apl[1][mi] >= mean_apl[0][mi]);
  }
  return out;
}

Outcome criterion_variance_ordering() {
  Outcome out;
  const int seeds = 10;
  double var_all[3] = {};
  double var_rsu[3] = {};
  const double ps[3] = {0.0, 0.5, 1.0};
  for (int pi = 0; pi < 3; ++pi) {
    for (int s = 0; s < seeds; ++s) {
      SimConfig cfg;
      cfg.p = ps[pi];
      cfg.m = 2;
      cfg.m0 = 6;
      cfg.s = 6;
      cfg.mode = SimMode::Grid;
      cfg.steps = 300;
      cfg.grid_rows = 5;
      cfg.grid_cols = 5;
      cfg.grid_block_m = 300.0;
      cfg.grid_speed_mps = 10.0;
      cfg.seed = derive_seed(derive_seed(kMasterSeed, "variance"),
                             static_cast<std::uint64_t>(pi * 100 + s));
      const RunResult result = run(cfg);
      var_all[pi] += result.metrics.back().degree_variance_all / seeds;
      var_rsu[pi] += result.metrics.back().degree_variance_rsu / seeds;
    }
  }
  out.require("Var(p=0) = " + fmt(var_all[0]) + " > Var(p=0.5) = " + fmt(var_all[1]),
              var_all[0] > var_all[1]);
  out.require("Var(p=0.5) = " + fmt(var_all[1]) + " > Var(p=1) = " + fmt(var_all[2]),
              var_all[1] > var_all[2]);
  for (int pi = 0; pi < 3; ++pi) {
    out.require("p=" + fmt(ps[pi]) + ": RSU variance " + fmt(var_rsu[pi]) +
                    " > all-node variance " + fmt(var_all[pi]),
                var_rsu[pi] > var_all[pi]);
  }
  return out;
}

Outcome criterion_sampling_correctness() {
  Outcome out;

  // Chi-square, df=1, significance 0.001.
  LocalWorld lw;
  lw.members.push_back({0, 1});
  lw.members.push_back({1, 3});
  const std::vector<double> probs = {0.25, 0.75};
  Rng rng(derive_seed(kMasterSeed, "chi-square"));
  const int draws = 10000;
  int first = 0;
  for (int i = 0; i < draws; ++i) {
    if (sample_targets(lw, probs, 1, kDefaultEpsilon, rng)[0] == 0) ++first;
  }
  const double e0 = 0.25 * draws;
  const double e1 = 0.75 * draws;
  const double chi2 = (first - e0) * (first - e0) / e0 +
                      (draws - first - e1) * (draws - first - e1) / e1;
  out.require("chi-square = " + fmt(chi2) + " < 10.828 over 10^4 draws", chi2 < 10.828);

  // Forced full selection across randomized worlds.
  Rng gen(derive_seed(kMasterSeed, "forced"));
  int full = 0;
  for (int trial = 0; trial < 100; ++trial) {
    LocalWorld world;
    const std::size_t size = 1 + gen.uniform_index(20);
    for (std::size_t i = 0; i < size; ++i) {
      world.members.push_back(
          {static_cast<NodeId>(i), static_cast<std::uint32_t>(gen.uniform_index(10))});
    }
    auto raw = hybrid_connection_probs(world, 0.3);
    auto normalized = preprocess_and_normalize(std::move(raw), kDefaultEpsilon);
    auto picked = sample_targets(world, normalized, world.size(), kDefaultEpsilon, gen);
    std::sort(picked.begin(), picked.end());
    bool all = picked.size() == world.size();
    for (std::size_t i = 0; all && i < picked.size(); ++i) {
      all = picked[i] == static_cast<NodeId>(i);
    }
    if (all) ++full;
  }
  out.require("m = M_i returned all members in " + std::to_string(full) + "/100 cases",
              full == 100);
  return out;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome criterion_cli_determinism() {
  Outcome out;
  const char* cli = std::getenv("VANETSIM_CLI");
  if (cli == nullptr) {
    out.require("VANETSIM_CLI points at the vanetsim binary", false);
    return out;
  }
  const fs::path dir = fs::temp_directory_path() / "vanet_acceptance_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "sim.cfg");
    cfg << "p = 0.5\nm = 2\nm0 = 5\nsteps = 200\nseed = 7\nmode = well_mixed\n";
  }
  auto shell = [&](const std::string& args) {
    const std::string cmd = std::string(cli) + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  const std::string cfg_arg = " --config " + (dir / "sim.cfg").string();

  bool ran = shell("grow" + cfg_arg + " --out " + (dir / "g1").string()) &&
             shell("grow" + cfg_arg + " --out " + (dir / "g2").string());
  out.require("grow runs exit 0", ran);
  out.require("grow metrics byte-identical across reruns",
              ran && !slurp(dir / "g1" / "metrics.csv").empty() &&
                  slurp(dir / "g1" / "metrics.csv") == slurp(dir / "g2" / "metrics.csv"));

  bool swept = true;
  for (int jobs : {1, 4}) {
    swept = swept && shell("attack" + cfg_arg + " --p 0 0.5 1 --f 0.1 --trials 2 --jobs " +
                           std::to_string(jobs) + " --out " +
                           (dir / ("a" + std::to_string(jobs))).string());
  }
  out.require("attack sweeps exit 0", swept);
  out.require("attack table byte-identical across --jobs {1,4}",
              swept && !slurp(dir / "a1" / "attack_sweep.csv").empty() &&
                  slurp(dir / "a1" / "attack_sweep.csv") ==
                      slurp(dir / "a4" / "attack_sweep.csv"));
  fs::remove_all(dir);
  return out;
}

Outcome criterion_oracle_equivalence() {
  Outcome out;
  Rng rng(derive_seed(kMasterSeed, "oracle"));
  bool lcc_exact = true;
  bool apl_exact = true;
  int apl_checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + rng.uniform_index(47);  // up to 50 nodes
    const double q = 0.02 + 0.25 * rng.uniform01();
    const Graph g = oracle::random_graph(n, q, rng);
    lcc_exact = lcc_exact && g.lcc_fraction() == oracle::lcc_fraction(g);
    if (g.largest_component().size() >= 2) {
      apl_exact =
          apl_exact && g.average_path_length(std::nullopt, 0) == oracle::average_path_length(g);
      ++apl_checked;
    }
  }
  out.require("lcc_fraction exact on 50 random graphs", lcc_exact);
  out.require("full-source APL exact on " + std::to_string(apl_checked) + " graphs",
              apl_exact && apl_checked >= 40);
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double time_cap_s;  // 0 = none stated
  std::function<Outcome()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "hybrid probability identity", 1.0, criterion_probability_identity},
      {2, "pdf normalization", 1.0, criterion_pdf_normalization},
      {3, "tunable exponent formula", 0.0, criterion_exponent_formula},
      {4, "trajectory boundary limits", 1.0, criterion_trajectory_limits},
      {5, "degree-distribution regimes", 60.0, criterion_degree_regimes},
      {6, "random-attack robustness", 30.0, criterion_random_attack},
      {7, "targeted-attack scheduling effect", 30.0, criterion_targeted_attack_scheduling},
      {8, "average path length monotonicity", 60.0, criterion_apl_monotonicity},
      {9, "degree-variance ordering", 120.0, criterion_variance_ordering},
      {10, "sampling correctness", 0.0, criterion_sampling_correctness},
      {11, "determinism across reruns and jobs", 30.0, criterion_cli_determinism},
      {12, "oracle equivalence", 10.0, criterion_oracle_equivalence},
  };
  std::optional<int> only;
  if (argc > 1) only = std::atoi(argv[1]);

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (only && *only != c.id) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.fn();
    } catch (const std::exception& e) {
      outcome.require(std::string("unexpected error: ") + e.what(), false);
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_cap_s > 0.0 && elapsed > c.time_cap_s) {
      outcome.require("runtime " + fmt(elapsed) + " s within " + fmt(c.time_cap_s) + " s cap",
                      false);
    }
    std::printf("[%s] %2d  %-38s %7.2f s\n", outcome.passed ? "PASS" : "FAIL", c.id, c.name,
                elapsed);
    for (const Check& check : outcome.checks) {
      std::printf("        %s %s\n", check.ok ? "-" : "!", check.label.c_str());
    }
    if (!outcome.passed) ++failures;
  }
  std::printf("acceptance: %d criterion(s) failed\n", failures);
  return failures;
}
