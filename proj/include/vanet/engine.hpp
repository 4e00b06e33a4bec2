#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vanet/graph.hpp"
#include "vanet/mobility.hpp"
#include "vanet/rng.hpp"
#include "vanet/sim_config.hpp"

namespace vanet {

struct NodeRecord {
  NodeKind kind;
  Position pos;
  double range_m;
  std::uint64_t join_step;
};

// Per-step observables. degree_variance_rsu is NaN when no RSUs are live.
struct MetricsRecord {
  std::uint64_t step;
  std::size_t node_count;
  std::size_t edge_count;
  double lcc_fraction;
  double degree_variance_all;
  double degree_variance_rsu;
  double mean_degree;
};

struct SimState {
  Graph graph;
  std::map<NodeId, NodeRecord> registry;  // live nodes, ordered by id
  std::uint64_t step = 0;
  NodeId next_id = 0;
  Rng rng;
  MobilityTrace trace;  // mobility script for grid/trace modes

  std::vector<NodeId> live_rsus() const;
};

// Intersection positions used for the initial core in grid and trace
// modes. The first picks are the boundary midline intersections, then the
// remaining intersections in row-major order. Throws ConfigError if count
// exceeds the number of intersections.
std::vector<Position> default_rsu_positions(int rows, int cols, double block_m, int count);

// Builds the initial core: m0 pairwise connected nodes (s RSUs first), at
// step 0. Grid mode also generates the mobility script; trace mode loads
// and validates it. Trace node ids are offset by m0 so they never collide
// with the core.
SimState init_network(const SimConfig& cfg);

// One simulation step: apply mobility events, drop infeasible links,
// attach the step's new OBUs, then measure. Returns the metrics of the
// completed step.
MetricsRecord advance_step(SimState& state, const SimConfig& cfg);

struct RunResult {
  std::vector<MetricsRecord> metrics;
  SimState state;
};

// init_network plus cfg.steps advance_step calls. Deterministic per
// (config, seed).
RunResult run(const SimConfig& cfg);

// Topology file: '#' provenance lines, a node table (`id kind x y range`
// per line) and an edge list (`i j` per line), in sections introduced by
// `nodes <count>` and `edges <count>`.
void save_topology(const Graph& graph, const std::map<NodeId, NodeRecord>& registry,
                   const std::string& path, const std::string& provenance = {});

struct LoadedTopology {
  Graph graph;
  std::map<NodeId, NodeRecord> registry;
};

LoadedTopology load_topology(const std::string& path);

}  // namespace vanet
