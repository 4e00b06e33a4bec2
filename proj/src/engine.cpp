#include "vanet/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "vanet/attachment.hpp"

namespace vanet {

std::vector<NodeId> SimState::live_rsus() const {
  std::vector<NodeId> ids;
  for (const auto& [id, rec] : registry) {
    if (rec.kind == NodeKind::Rsu) ids.push_back(id);
  }
  return ids;
}

std::vector<Position> default_rsu_positions(int rows, int cols, double block_m, int count) {
  if (count > rows * cols) {
    throw ConfigError("s", "RSU placement infeasible: grid has only " +
                               std::to_string(rows * cols) + " intersections");
  }
  auto at = [block_m](int r, int c) { return Position{c * block_m, r * block_m}; };
  const int rmid = rows / 2;
  const int cmid = cols / 2;
  std::vector<std::pair<int, int>> order = {
      {0, cmid}, {rows - 1, cmid}, {rmid, 0}, {rmid, cols - 1}};
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) order.emplace_back(r, c);
  }
  std::vector<Position> out;
  std::vector<std::pair<int, int>> seen;
  for (const auto& rc : order) {
    if (std::find(seen.begin(), seen.end(), rc) != seen.end()) continue;
    seen.push_back(rc);
    out.push_back(at(rc.first, rc.second));
    if (static_cast<int>(out.size()) == count) break;
  }
  return out;
}

namespace {

constexpr const char* kEngineStream = "engine";
constexpr const char* kTraceStream = "trace";
constexpr const char* kInitStream = "init";

std::vector<Position> initial_obu_positions(const SimConfig& cfg, int count) {
  std::vector<Position> out;
  out.reserve(static_cast<std::size_t>(count));
  if (cfg.mode == SimMode::WellMixed) {
    for (int i = 0; i < count; ++i) out.push_back({static_cast<double>(i), 0.0});
    return out;
  }
  Rng rng(derive_seed(cfg.seed, kInitStream));
  for (int i = 0; i < count; ++i) {
    const int r = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(cfg.grid_rows)));
    const int c = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(cfg.grid_cols)));
    out.push_back({c * cfg.grid_block_m, r * cfg.grid_block_m});
  }
  return out;
}

LiveNode live_view(NodeId id, const NodeRecord& rec, std::uint32_t degree) {
  return LiveNode{id, rec.kind, rec.pos, rec.range_m, degree};
}

// All live nodes ordered by id, with degrees read from the graph.
std::vector<LiveNode> live_snapshot(const SimState& st) {
  std::vector<LiveNode> live;
  live.reserve(st.registry.size());
  for (const auto& [id, rec] : st.registry) {
    live.push_back(live_view(id, rec, st.graph.degree(id)));
  }
  return live;
}

LocalWorld well_mixed_world(NodeId self, const std::vector<LiveNode>& live) {
  LocalWorld lw;
  lw.members.reserve(live.size());
  for (const LiveNode& node : live) {
    if (node.id != self) lw.members.push_back({node.id, node.degree});
  }
  return lw;
}

// Baseline local world: M members drawn uniformly without replacement from
// the in-range set (all of them when fewer than M are in range).
LocalWorld baseline_subsample(const LocalWorld& in_range, int M, Rng& rng) {
  if (in_range.size() <= static_cast<std::size_t>(M)) return in_range;
  LocalWorld lw;
  lw.members.reserve(static_cast<std::size_t>(M));
  for (std::size_t idx : rng.sample_indices(in_range.size(), static_cast<std::size_t>(M))) {
    lw.members.push_back(in_range.members[idx]);
  }
  return lw;
}

void attach_new_obu(SimState& st, const SimConfig& cfg, NodeId id) {
  std::vector<LiveNode> live = live_snapshot(st);
  const NodeRecord& rec = st.registry.at(id);
  LocalWorld lw = cfg.mode == SimMode::WellMixed
                      ? well_mixed_world(id, live)
                      : local_world_of(live_view(id, rec, st.graph.degree(id)), live);
  if (lw.empty()) return;  // joins with degree 0

  if (cfg.model == AttachModel::Baseline) {
    lw = baseline_subsample(lw, cfg.baseline_M, st.rng);
  }

  std::vector<NodeId> targets;
  if (lw.size() >= static_cast<std::size_t>(cfg.m)) {
    // Network size as the baseline kernel sees it: every live node except
    // the one joining.
    const std::uint64_t others = st.registry.size() - 1;
    const std::uint64_t t_eff =
        others > static_cast<std::uint64_t>(cfg.m0) ? others - cfg.m0 : 0;
    std::vector<double> raw =
        cfg.model == AttachModel::Hybrid
            ? hybrid_connection_probs(lw, cfg.p)
            : baseline_connection_probs(lw, static_cast<std::uint32_t>(lw.size()),
                                        static_cast<std::uint32_t>(cfg.m0), t_eff);
    const std::vector<double> probs = preprocess_and_normalize(std::move(raw), cfg.epsilon);
    targets = sample_targets(lw, probs, static_cast<std::size_t>(cfg.m), cfg.epsilon, st.rng);
  } else {
    for (const LocalWorld::Member& mb : lw.members) targets.push_back(mb.id);
  }
  for (NodeId tgt : targets) st.graph.add_edge(id, tgt);
}

MetricsRecord measure(const SimState& st, std::uint64_t step) {
  MetricsRecord rec;
  rec.step = step;
  rec.node_count = st.graph.node_count();
  rec.edge_count = st.graph.edge_count();
  rec.lcc_fraction = st.graph.lcc_fraction();
  rec.degree_variance_all = st.graph.degree_variance();
  const std::vector<NodeId> rsus = st.live_rsus();
  rec.degree_variance_rsu =
      rsus.empty() ? std::numeric_limits<double>::quiet_NaN() : st.graph.degree_variance(rsus);
  rec.mean_degree =
      2.0 * static_cast<double>(rec.edge_count) / static_cast<double>(rec.node_count);
  return rec;
}

}  // namespace

SimState init_network(const SimConfig& cfg) {
  cfg.validate();
  SimState st;
  st.rng = Rng(derive_seed(cfg.seed, kEngineStream));

  std::vector<Position> rsu_pos;
  if (cfg.s > 0) {
    if (cfg.mode == SimMode::WellMixed) {
      for (int i = 0; i < cfg.s; ++i) rsu_pos.push_back({static_cast<double>(i), 100.0});
    } else {
      rsu_pos = default_rsu_positions(cfg.grid_rows, cfg.grid_cols, cfg.grid_block_m, cfg.s);
    }
  }
  const std::vector<Position> obu_pos = initial_obu_positions(cfg, cfg.m0 - cfg.s);

  for (int i = 0; i < cfg.m0; ++i) {
    const NodeId id = static_cast<NodeId>(i);
    const bool is_rsu = i < cfg.s;
    st.graph.add_node(id);
    st.registry.emplace(id, NodeRecord{is_rsu ? NodeKind::Rsu : NodeKind::Obu,
                                       is_rsu ? rsu_pos[static_cast<std::size_t>(i)]
                                              : obu_pos[static_cast<std::size_t>(i - cfg.s)],
                                       is_rsu ? cfg.rsu_range_m : cfg.obu_range_m,
                                       0});
  }
  for (int i = 0; i < cfg.m0; ++i) {
    for (int j = i + 1; j < cfg.m0; ++j) {
      st.graph.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  }
  st.next_id = static_cast<NodeId>(cfg.m0);

  if (cfg.mode == SimMode::Grid && cfg.steps > 0) {
    GridTraceConfig gtc;
    gtc.rows = cfg.grid_rows;
    gtc.cols = cfg.grid_cols;
    gtc.block_m = cfg.grid_block_m;
    gtc.n_per_step = cfg.n_per_step;
    gtc.steps = cfg.steps;
    gtc.speed_mps = cfg.grid_speed_mps;
    gtc.seed = derive_seed(cfg.seed, kTraceStream);
    st.trace = generate_grid_trace(gtc);
  } else if (cfg.mode == SimMode::Trace) {
    st.trace = load_trace(cfg.trace_path);
  }
  return st;
}

MetricsRecord advance_step(SimState& st, const SimConfig& cfg) {
  const std::uint64_t t_next = st.step + 1;
  const NodeId offset = static_cast<NodeId>(cfg.m0);
  std::vector<NodeId> new_obus;

  if (cfg.mode == SimMode::WellMixed) {
    for (int k = 0; k < cfg.n_per_step; ++k) {
      const NodeId id = st.next_id++;
      st.graph.add_node(id);
      st.registry.emplace(
          id, NodeRecord{NodeKind::Obu, {static_cast<double>(id), 0.0}, cfg.obu_range_m, t_next});
      new_obus.push_back(id);
    }
  } else {
    if (t_next > st.trace.steps.size()) {
      throw std::runtime_error("trace underrun: step " + std::to_string(t_next) +
                               " requested but trace ends at step " +
                               std::to_string(st.trace.steps.size()));
    }
    const TraceStep& ev = st.trace.steps[t_next - 1];
    for (const TraceArrival& a : ev.arrivals) {
      const NodeId id = offset + a.id;
      st.graph.add_node(id);
      st.registry.emplace(id, NodeRecord{a.kind, a.pos,
                                         a.kind == NodeKind::Rsu ? cfg.rsu_range_m
                                                                 : cfg.obu_range_m,
                                         t_next});
      st.next_id = std::max(st.next_id, static_cast<NodeId>(id + 1));
      if (a.kind == NodeKind::Obu) new_obus.push_back(id);
    }
    for (const TraceMove& mv : ev.moves) {
      st.registry.at(offset + mv.id).pos = mv.pos;
    }
    for (NodeId id : ev.departures) {
      st.graph.remove_node(offset + id);
      st.registry.erase(offset + id);
    }

    // Drop links whose endpoints drifted out of range.
    for (const auto& [i, j] : st.graph.sorted_edges()) {
      const NodeRecord& ri = st.registry.at(i);
      const NodeRecord& rj = st.registry.at(j);
      if (!link_feasible(live_view(i, ri, 0), live_view(j, rj, 0))) {
        st.graph.remove_edge(i, j);
      }
    }
  }

  for (NodeId id : new_obus) {
    attach_new_obu(st, cfg, id);
  }

  const MetricsRecord rec = measure(st, t_next);
  st.step = t_next;
  return rec;
}

RunResult run(const SimConfig& cfg) {
  RunResult result{{}, init_network(cfg)};
  result.metrics.reserve(static_cast<std::size_t>(cfg.steps));
  for (int i = 0; i < cfg.steps; ++i) {
    result.metrics.push_back(advance_step(result.state, cfg));
  }
  return result;
}

namespace {

std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string fmt_range(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void save_topology(const Graph& graph, const std::map<NodeId, NodeRecord>& registry,
                   const std::string& path, const std::string& provenance) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_topology: cannot open '" + path + "' for writing");
  }
  if (!provenance.empty()) out << "# " << provenance << "\n";
  out << "nodes " << registry.size() << "\n";
  for (const auto& [id, rec] : registry) {
    out << id << ' ' << to_string(rec.kind) << ' ' << fmt_coord(rec.pos.x) << ' '
        << fmt_coord(rec.pos.y) << ' ' << fmt_range(rec.range_m) << "\n";
  }
  const auto edges = graph.sorted_edges();
  out << "edges " << edges.size() << "\n";
  for (const auto& [i, j] : edges) {
    out << i << ' ' << j << "\n";
  }
  if (!out) {
    throw std::runtime_error("save_topology: write to '" + path + "' failed");
  }
}

LoadedTopology load_topology(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_topology: cannot open '" + path + "'");
  }
  LoadedTopology topo;
  std::string line;
  std::size_t line_no = 0;
  auto next_content_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      return line;
    }
    throw std::runtime_error(path + ": unexpected end of file");
  };
  auto fail = [&](const std::string& what) -> void {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
  };

  std::istringstream head(next_content_line());
  std::string tag;
  std::size_t node_count = 0;
  if (!(head >> tag >> node_count) || tag != "nodes") fail("expected 'nodes <count>'");
  for (std::size_t k = 0; k < node_count; ++k) {
    std::istringstream row(next_content_line());
    unsigned long id = 0;
    std::string kind;
    double x = 0, y = 0, range = 0;
    if (!(row >> id >> kind >> x >> y >> range)) fail("expected 'id kind x y range'");
    topo.graph.add_node(static_cast<NodeId>(id));
    topo.registry.emplace(static_cast<NodeId>(id),
                          NodeRecord{node_kind_from_string(kind), {x, y}, range, 0});
  }
  std::istringstream ehead(next_content_line());
  std::size_t edge_count = 0;
  if (!(ehead >> tag >> edge_count) || tag != "edges") fail("expected 'edges <count>'");
  for (std::size_t k = 0; k < edge_count; ++k) {
    std::istringstream row(next_content_line());
    unsigned long i = 0, j = 0;
    if (!(row >> i >> j)) fail("expected 'i j'");
    topo.graph.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
  }
  return topo;
}

}  // namespace vanet
