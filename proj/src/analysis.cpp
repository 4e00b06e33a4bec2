#include "vanet/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace vanet {

namespace {

constexpr std::uint32_t kUnitBinLimit = 50;

void run_jobs(std::size_t jobs, std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t threads = std::min(jobs, n);
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct LinearFit {
  double slope;
  double intercept;
  double r_squared;
};

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double resid = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += resid * resid;
  }
  fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace

DegreeHistogram histogram_from_degrees(std::span<const std::uint32_t> degrees, Binning binning) {
  if (degrees.empty()) {
    throw std::invalid_argument("histogram_from_degrees: no degrees");
  }
  const std::uint32_t max_degree = *std::max_element(degrees.begin(), degrees.end());

  // Bin edges: unit bins through min(max, 50), then doubling widths.
  std::vector<double> edges;
  for (std::uint32_t k = 0; k <= std::min(max_degree, kUnitBinLimit) + 1; ++k) {
    edges.push_back(static_cast<double>(k));
  }
  if (binning == Binning::Log) {
    // Doubling edges: [51, 102), [102, 204), [204, 408), ...
    while (edges.back() <= static_cast<double>(max_degree)) {
      edges.push_back(2.0 * edges.back());
    }
  } else if (max_degree > kUnitBinLimit) {
    for (std::uint32_t k = kUnitBinLimit + 2; k <= max_degree + 1; ++k) {
      edges.push_back(static_cast<double>(k));
    }
  }

  DegreeHistogram hist;
  hist.binning = binning;
  hist.total = degrees.size();
  hist.bins.resize(edges.size() - 1);
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    hist.bins[b].k_lo = edges[b];
    hist.bins[b].k_hi = edges[b + 1];
    hist.bins[b].count = 0;
  }
  for (std::uint32_t d : degrees) {
    const double kd = static_cast<double>(d);
    // Unit region is addressable directly; the log tail is searched.
    std::size_t b;
    if (d <= kUnitBinLimit) {
      b = d;
    } else {
      b = static_cast<std::size_t>(
              std::upper_bound(edges.begin(), edges.end(), kd) - edges.begin()) -
          1;
    }
    ++hist.bins[b].count;
  }
  const double n = static_cast<double>(hist.total);
  for (auto& bin : hist.bins) {
    bin.density = static_cast<double>(bin.count) / (n * (bin.k_hi - bin.k_lo));
  }
  return hist;
}

DegreeHistogram degree_histogram(const Graph& g, Binning binning) {
  if (g.node_count() == 0) {
    throw std::invalid_argument("degree_histogram: empty graph");
  }
  std::vector<std::uint32_t> degrees;
  degrees.reserve(g.node_count());
  for (NodeId id : g.sorted_nodes()) degrees.push_back(g.degree(id));
  return histogram_from_degrees(degrees, binning);
}

FitResult fit_tail(const DegreeHistogram& hist, FitModel model, double k_min, double shift_a) {
  // CCDF at each occupied bin's lower edge; exact for integer degrees.
  std::vector<double> xs, ys;
  std::uint64_t above = 0;
  for (const auto& bin : hist.bins) above += bin.count;
  for (const auto& bin : hist.bins) {
    const std::uint64_t at_or_above = above;
    above -= bin.count;
    if (bin.count == 0 || bin.k_lo < k_min) continue;
    double x = bin.k_lo;
    if (model == FitModel::PowerLaw) {
      if (bin.k_lo <= 0.0) continue;
      x = std::log(bin.k_lo);
    } else if (model == FitModel::ShiftedPowerLaw) {
      if (bin.k_lo + shift_a <= 0.0) continue;
      x = std::log(bin.k_lo + shift_a);
    }
    xs.push_back(x);
    ys.push_back(std::log(static_cast<double>(at_or_above) / static_cast<double>(hist.total)));
  }
  if (xs.size() < 5) {
    throw std::runtime_error("fit_tail: fewer than 5 occupied bins above k_min");
  }
  const LinearFit fit = linear_fit(xs, ys);
  FitResult result;
  result.parameter = model == FitModel::Exponential ? -fit.slope : 1.0 - fit.slope;
  result.r_squared = fit.r_squared;
  return result;
}

const char* to_string(AttackStrategy s) {
  return s == AttackStrategy::Random ? "random" : "targeted";
}

namespace {

double surviving_lcc(Graph g, const std::vector<NodeId>& victims) {
  for (NodeId id : victims) g.remove_node(id);
  if (g.node_count() == 0) return 0.0;
  return g.lcc_fraction();
}

std::size_t removal_count(const Graph& g, double f, const char* op) {
  if (!(f > 0.0 && f < 1.0)) {
    throw std::invalid_argument(std::string(op) + ": intensity f must lie in (0, 1)");
  }
  return static_cast<std::size_t>(std::floor(f * static_cast<double>(g.node_count())));
}

}  // namespace

AttackResult random_attack(const Graph& g, double f, std::uint64_t seed) {
  const std::size_t remove = removal_count(g, f, "random_attack");
  const std::vector<NodeId> nodes = g.sorted_nodes();
  Rng rng(seed);
  std::vector<NodeId> victims;
  victims.reserve(remove);
  for (std::size_t idx : rng.sample_indices(nodes.size(), remove)) {
    victims.push_back(nodes[idx]);
  }
  return {AttackStrategy::Random, f, surviving_lcc(g, victims), seed};
}

AttackResult targeted_attack(const Graph& g, double f) {
  const std::size_t remove = removal_count(g, f, "targeted_attack");
  std::vector<NodeId> nodes = g.sorted_nodes();
  // Single-shot ranking: descending degree, ascending id on ties.
  std::stable_sort(nodes.begin(), nodes.end(), [&g](NodeId a, NodeId b) {
    const auto da = g.degree(a);
    const auto db = g.degree(b);
    return da != db ? da > db : a < b;
  });
  nodes.resize(remove);
  return {AttackStrategy::Targeted, f, surviving_lcc(g, nodes), 0};
}

std::vector<AttackSweepRow> attack_sweep(const SimConfig& cfg_template,
                                         std::span<const double> p_values,
                                         std::span<const double> intensities, int trials,
                                         std::size_t jobs) {
  if (trials < 1) {
    throw std::invalid_argument("attack_sweep: trials must be >= 1");
  }
  if (p_values.empty() || intensities.empty()) {
    throw std::invalid_argument("attack_sweep: p_values and intensities must be nonempty");
  }
  // Every cell config must be valid before workers start.
  for (double p : p_values) {
    SimConfig cell = cfg_template;
    cell.p = p;
    cell.validate();
  }
  for (double f : intensities) {
    if (!(f > 0.0 && f < 1.0)) {
      throw std::invalid_argument("attack_sweep: intensities must lie in (0, 1)");
    }
  }

  const std::size_t cells = p_values.size() * static_cast<std::size_t>(trials);
  // lcc[{p_idx, strategy, f_idx}][trial]
  const std::size_t strategies = 2;
  std::vector<double> lcc(p_values.size() * strategies * intensities.size() *
                          static_cast<std::size_t>(trials));
  auto slot = [&](std::size_t pi, std::size_t strat, std::size_t fi, std::size_t trial) {
    return ((pi * strategies + strat) * intensities.size() + fi) *
               static_cast<std::size_t>(trials) +
           trial;
  };

  run_jobs(jobs, cells, [&](std::size_t cell) {
    const std::size_t pi = cell / static_cast<std::size_t>(trials);
    const std::size_t trial = cell % static_cast<std::size_t>(trials);
    SimConfig cfg = cfg_template;
    cfg.p = p_values[pi];
    cfg.seed = derive_seed(cfg_template.seed, cell);
    const Graph grown = run(cfg).state.graph;
    for (std::size_t fi = 0; fi < intensities.size(); ++fi) {
      const double f = intensities[fi];
      lcc[slot(pi, 0, fi, trial)] =
          random_attack(grown, f, derive_seed(cfg.seed, 1000 + fi)).lcc_after;
      lcc[slot(pi, 1, fi, trial)] = targeted_attack(grown, f).lcc_after;
    }
  });

  std::vector<AttackSweepRow> rows;
  rows.reserve(p_values.size() * strategies * intensities.size());
  for (std::size_t pi = 0; pi < p_values.size(); ++pi) {
    for (std::size_t strat = 0; strat < strategies; ++strat) {
      for (std::size_t fi = 0; fi < intensities.size(); ++fi) {
        double sum = 0;
        for (int tr = 0; tr < trials; ++tr) {
          sum += lcc[slot(pi, strat, fi, static_cast<std::size_t>(tr))];
        }
        const double mean = sum / trials;
        double ss = 0;
        for (int tr = 0; tr < trials; ++tr) {
          const double d = lcc[slot(pi, strat, fi, static_cast<std::size_t>(tr))] - mean;
          ss += d * d;
        }
        rows.push_back({p_values[pi],
                        strat == 0 ? AttackStrategy::Random : AttackStrategy::Targeted,
                        intensities[fi], mean, std::sqrt(ss / trials), trials});
      }
    }
  }
  return rows;
}

std::vector<AplSweepRow> apl_sweep(const SimConfig& cfg_template,
                                   std::span<const double> p_values,
                                   std::span<const int> m_values, int window,
                                   std::size_t jobs) {
  if (window < 1) {
    throw std::invalid_argument("apl_sweep: window must be >= 1");
  }
  if (p_values.empty() || m_values.empty()) {
    throw std::invalid_argument("apl_sweep: p_values and m_values must be nonempty");
  }
  for (double p : p_values) {
    for (int m : m_values) {
      SimConfig cell = cfg_template;
      cell.p = p;
      cell.m = m;
      cell.validate();
    }
  }
  const std::size_t cells = p_values.size() * m_values.size();
  std::vector<AplSweepRow> rows(cells);

  run_jobs(jobs, cells, [&](std::size_t cell) {
    const std::size_t pi = cell / m_values.size();
    const std::size_t mi = cell % m_values.size();
    SimConfig cfg = cfg_template;
    cfg.p = p_values[pi];
    cfg.m = m_values[mi];
    SimState state = init_network(cfg);
    const int first_windowed = std::max(0, cfg.steps - window);
    double sum = 0;
    int counted = 0;
    for (int step = 0; step < cfg.steps; ++step) {
      advance_step(state, cfg);
      if (step < first_windowed) continue;
      try {
        sum += state.graph.average_path_length(kDefaultAplSources,
                                               derive_seed(cfg.seed, 2000 + state.step));
        ++counted;
      } catch (const std::domain_error&) {
        // degenerate LCC at this step; skip it
      }
    }
    rows[cell] = {cfg.p, cfg.m,
                  counted > 0 ? sum / counted : std::numeric_limits<double>::quiet_NaN()};
  });
  return rows;
}

}  // namespace vanet
