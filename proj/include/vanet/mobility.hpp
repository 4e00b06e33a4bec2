#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vanet/attachment.hpp"
#include "vanet/graph.hpp"

namespace vanet {

enum class NodeKind { Rsu, Obu };

const char* to_string(NodeKind kind);
NodeKind node_kind_from_string(const std::string& s);

// Planar coordinates in meters.
struct Position {
  double x = 0.0;
  double y = 0.0;
};

double distance_m(const Position& a, const Position& b);

inline constexpr double kDefaultObuRangeM = 300.0;
inline constexpr double kDefaultRsuRangeM = 500.0;

// One live node as seen by the per-step snapshot used for link decisions.
struct LiveNode {
  NodeId id;
  NodeKind kind;
  Position pos;
  double range_m;
  std::uint32_t degree = 0;
};

// Whether a and b may hold a link. An OBU pair connects within the smaller
// of their ranges; any pair involving an RSU uses the RSU range (the larger
// one if both endpoints are RSUs). Symmetric by construction.
bool link_feasible(const LiveNode& a, const LiveNode& b);

// Every other live node within range of `who`, paired with its current
// degree. An empty result is valid; `who` is never a member.
LocalWorld local_world_of(const LiveNode& who, std::span<const LiveNode> all);

struct TraceArrival {
  NodeId id;
  NodeKind kind;
  Position pos;
};

struct TraceMove {
  NodeId id;
  Position pos;
};

struct TraceStep {
  std::vector<TraceArrival> arrivals;
  std::vector<TraceMove> moves;
  std::vector<NodeId> departures;
};

// Scripted mobility: steps[i] holds the events applied during simulation
// step i + 1. Within one step, arrivals apply first, then moves, then
// departures.
struct MobilityTrace {
  std::vector<TraceStep> steps;

  // Checks the lifecycle rules: ids arrive before they move or depart,
  // depart at most once, never act after departure, and RSUs neither move
  // nor depart. Throws std::runtime_error naming the offending id.
  void validate() const;
};

struct GridTraceConfig {
  int rows = 5;
  int cols = 5;
  double block_m = 300.0;
  int n_per_step = 1;
  int steps = 100;
  double speed_mps = 10.0;
  std::uint64_t seed = 0;
};

// Synthetic Manhattan-grid mobility: each step spawns n_per_step OBUs at
// random perimeter intersections, routes them along axis-aligned streets
// to a random exit, and departs them there. One step is one second, so a
// move covers speed_mps meters (less at a turn or exit). Deterministic per
// seed; all coordinates are quantized to millimeters so that a save/load
// round trip is exact.
MobilityTrace generate_grid_trace(const GridTraceConfig& cfg);

// Trace file format: '#' comment lines, a `step,event,node_id,kind,x,y`
// header, then one event per row with steps non-decreasing and >= 1.
MobilityTrace load_trace(const std::string& path);
void save_trace(const MobilityTrace& trace, const std::string& path,
                const std::string& provenance = {});

}  // namespace vanet
