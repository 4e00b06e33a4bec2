#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vanet/engine.hpp"
#include "vanet/graph.hpp"

namespace vanet {

enum class Binning { Unit, Log };

// Contiguous, non-overlapping degree bins. density integrates to 1:
// sum over bins of density * (k_hi - k_lo) == 1.
struct DegreeHistogram {
  struct Bin {
    double k_lo;
    double k_hi;  // exclusive
    std::uint64_t count;
    double density;
  };

  std::vector<Bin> bins;
  Binning binning = Binning::Unit;
  std::uint64_t total = 0;
};

// Unit-width bins up to degree 50; with Binning::Log, bins of doubling
// width beyond that.
DegreeHistogram histogram_from_degrees(std::span<const std::uint32_t> degrees, Binning binning);
DegreeHistogram degree_histogram(const Graph& g, Binning binning);

enum class FitModel { Exponential, PowerLaw, ShiftedPowerLaw };

struct FitResult {
  double parameter;  // decay rate (1/m) for Exponential, gamma for the power laws
  double r_squared;
};

// Least-squares regression on the complementary CDF of the histogram,
// restricted to occupied bins with k_lo >= k_min (at least 5 required):
//   Exponential:       ln CCDF vs k          -> rate = -slope
//   PowerLaw:          ln CCDF vs ln k       -> gamma = 1 - slope
//   ShiftedPowerLaw:   ln CCDF vs ln(k + a)  -> gamma = 1 - slope
// shift_a is only read for ShiftedPowerLaw.
FitResult fit_tail(const DegreeHistogram& hist, FitModel model, double k_min,
                   double shift_a = 0.0);

enum class AttackStrategy { Random, Targeted };

const char* to_string(AttackStrategy s);

struct AttackResult {
  AttackStrategy strategy;
  double intensity;
  double lcc_after;  // 0 when nothing survives
  std::uint64_t seed;
};

// Removes floor(f * n) uniformly sampled nodes from a copy of g and
// reports the surviving LCC fraction. The input graph is never mutated.
AttackResult random_attack(const Graph& g, double f, std::uint64_t seed);

// Removes the floor(f * n) highest-degree nodes, ranked once before any
// removal (degrees are not recomputed), ties broken by ascending id.
AttackResult targeted_attack(const Graph& g, double f);

struct AttackSweepRow {
  double p;
  AttackStrategy strategy;
  double f;
  double mean_lcc_after;
  double sd_lcc_after;
  int trials;
};

// Grows one topology per (p, trial) from seeds derived off
// cfg_template.seed, then applies both strategies at every intensity to
// copies of it. Row order and contents are independent of `jobs`.
std::vector<AttackSweepRow> attack_sweep(const SimConfig& cfg_template,
                                         std::span<const double> p_values,
                                         std::span<const double> intensities, int trials,
                                         std::size_t jobs = 1);

struct AplSweepRow {
  double p;
  int m;
  double mean_apl;  // mean over the final `window` steps
};

// For each (p, m): grow per cfg_template, measure the average path length
// at each of the final `window` steps and report the mean. Steps whose LCC
// has fewer than 2 nodes are skipped; the result is NaN if every windowed
// step is degenerate.
std::vector<AplSweepRow> apl_sweep(const SimConfig& cfg_template,
                                   std::span<const double> p_values,
                                   std::span<const int> m_values, int window,
                                   std::size_t jobs = 1);

}  // namespace vanet
