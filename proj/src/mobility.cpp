#include "vanet/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "vanet/rng.hpp"

namespace vanet {

const char* to_string(NodeKind kind) {
  return kind == NodeKind::Rsu ? "RSU" : "OBU";
}

NodeKind node_kind_from_string(const std::string& s) {
  if (s == "RSU") return NodeKind::Rsu;
  if (s == "OBU") return NodeKind::Obu;
  throw std::invalid_argument("unknown node kind '" + s + "'");
}

double distance_m(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

bool link_feasible(const LiveNode& a, const LiveNode& b) {
  double threshold;
  if (a.kind == NodeKind::Rsu || b.kind == NodeKind::Rsu) {
    threshold = 0.0;
    if (a.kind == NodeKind::Rsu) threshold = a.range_m;
    if (b.kind == NodeKind::Rsu) threshold = std::max(threshold, b.range_m);
  } else {
    threshold = std::min(a.range_m, b.range_m);
  }
  return distance_m(a.pos, b.pos) <= threshold;
}

LocalWorld local_world_of(const LiveNode& who, std::span<const LiveNode> all) {
  LocalWorld lw;
  for (const LiveNode& other : all) {
    if (other.id == who.id) continue;
    if (link_feasible(who, other)) {
      lw.members.push_back({other.id, other.degree});
    }
  }
  return lw;
}

void MobilityTrace::validate() const {
  std::unordered_map<NodeId, NodeKind> arrived;
  std::unordered_set<NodeId> departed;
  for (std::size_t si = 0; si < steps.size(); ++si) {
    const TraceStep& st = steps[si];
    for (const TraceArrival& a : st.arrivals) {
      if (departed.count(a.id)) {
        throw std::runtime_error("trace: node " + std::to_string(a.id) +
                                 " re-arrives after departure");
      }
      if (!arrived.emplace(a.id, a.kind).second) {
        throw std::runtime_error("trace: duplicate arrival for node " + std::to_string(a.id));
      }
    }
    for (const TraceMove& mv : st.moves) {
      auto it = arrived.find(mv.id);
      if (it == arrived.end() || departed.count(mv.id)) {
        throw std::runtime_error("trace: move for absent or departed node " +
                                 std::to_string(mv.id));
      }
      if (it->second == NodeKind::Rsu) {
        throw std::runtime_error("trace: RSU node " + std::to_string(mv.id) + " must not move");
      }
      if (!std::isfinite(mv.pos.x) || !std::isfinite(mv.pos.y)) {
        throw std::runtime_error("trace: non-finite position for node " + std::to_string(mv.id));
      }
    }
    for (NodeId id : st.departures) {
      auto it = arrived.find(id);
      if (it == arrived.end() || !departed.insert(id).second) {
        throw std::runtime_error("trace: departure for absent or departed node " +
                                 std::to_string(id));
      }
      if (it->second == NodeKind::Rsu) {
        throw std::runtime_error("trace: RSU node " + std::to_string(id) + " must not depart");
      }
    }
  }
}

namespace {

double quantize_mm(double v) { return std::round(v * 1000.0) / 1000.0; }

struct Vehicle {
  NodeId id;
  Position pos;
  std::vector<Position> waypoints;  // remaining, front is next
  std::size_t next = 0;
};

std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

MobilityTrace generate_grid_trace(const GridTraceConfig& cfg) {
  if (cfg.rows < 2 || cfg.cols < 2) {
    throw std::invalid_argument("generate_grid_trace: rows and cols must be >= 2");
  }
  if (cfg.block_m <= 0.0) {
    throw std::invalid_argument("generate_grid_trace: block_m must be > 0");
  }
  if (cfg.steps < 1) {
    throw std::invalid_argument("generate_grid_trace: steps must be >= 1");
  }
  if (cfg.n_per_step < 1) {
    throw std::invalid_argument("generate_grid_trace: n_per_step must be >= 1");
  }
  if (cfg.speed_mps <= 0.0) {
    throw std::invalid_argument("generate_grid_trace: speed_mps must be > 0");
  }

  // Perimeter intersections in row-major order; these are the entry and
  // exit points of the grid.
  std::vector<Position> perimeter;
  for (int r = 0; r < cfg.rows; ++r) {
    for (int c = 0; c < cfg.cols; ++c) {
      if (r == 0 || r == cfg.rows - 1 || c == 0 || c == cfg.cols - 1) {
        perimeter.push_back({c * cfg.block_m, r * cfg.block_m});
      }
    }
  }

  Rng rng(cfg.seed);
  MobilityTrace trace;
  trace.steps.resize(static_cast<std::size_t>(cfg.steps));
  std::vector<Vehicle> fleet;
  NodeId next_id = 0;

  for (int step = 1; step <= cfg.steps; ++step) {
    TraceStep& out = trace.steps[static_cast<std::size_t>(step - 1)];

    // Vehicles spawned in earlier steps advance one second along their route.
    for (Vehicle& v : fleet) {
      if (v.next >= v.waypoints.size()) continue;
      const Position target = v.waypoints[v.next];
      const double dist = distance_m(v.pos, target);
      if (dist <= cfg.speed_mps) {
        // Reaches the waypoint this second; stops there (turn or exit).
        v.pos = {quantize_mm(target.x), quantize_mm(target.y)};
        ++v.next;
      } else {
        v.pos.x = quantize_mm(v.pos.x + (target.x - v.pos.x) / dist * cfg.speed_mps);
        v.pos.y = quantize_mm(v.pos.y + (target.y - v.pos.y) / dist * cfg.speed_mps);
      }
      out.moves.push_back({v.id, v.pos});
      if (v.next >= v.waypoints.size()) {
        out.departures.push_back(v.id);  // reached its exit
      }
    }
    fleet.erase(std::remove_if(fleet.begin(), fleet.end(),
                               [](const Vehicle& v) { return v.next >= v.waypoints.size(); }),
                fleet.end());

    for (int k = 0; k < cfg.n_per_step; ++k) {
      const std::size_t entry_idx = rng.uniform_index(perimeter.size());
      std::size_t exit_idx = rng.uniform_index(perimeter.size() - 1);
      if (exit_idx >= entry_idx) ++exit_idx;
      const Position entry = perimeter[entry_idx];
      const Position exit = perimeter[exit_idx];

      Vehicle v;
      v.id = next_id++;
      v.pos = entry;
      // Manhattan route: first along the entry row, then down the exit column.
      const Position corner{exit.x, entry.y};
      if (distance_m(entry, corner) > 0.0) v.waypoints.push_back(corner);
      if (distance_m(corner, exit) > 0.0) v.waypoints.push_back(exit);

      out.arrivals.push_back({v.id, NodeKind::Obu, v.pos});
      fleet.push_back(std::move(v));
    }
  }
  return trace;
}

void save_trace(const MobilityTrace& trace, const std::string& path,
                const std::string& provenance) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_trace: cannot open '" + path + "' for writing");
  }
  if (!provenance.empty()) out << "# " << provenance << "\n";
  out << "step,event,node_id,kind,x,y\n";
  for (std::size_t si = 0; si < trace.steps.size(); ++si) {
    const std::size_t step = si + 1;
    const TraceStep& st = trace.steps[si];
    for (const TraceArrival& a : st.arrivals) {
      out << step << ",arrive," << a.id << ',' << to_string(a.kind) << ','
          << fmt_coord(a.pos.x) << ',' << fmt_coord(a.pos.y) << "\n";
    }
    for (const TraceMove& mv : st.moves) {
      out << step << ",move," << mv.id << ",," << fmt_coord(mv.pos.x) << ','
          << fmt_coord(mv.pos.y) << "\n";
    }
    for (NodeId id : st.departures) {
      out << step << ",depart," << id << ",,,\n";
    }
  }
  if (!out) {
    throw std::runtime_error("save_trace: write to '" + path + "' failed");
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no,
                             const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

double parse_coord(const std::string& s, const std::string& path, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    parse_fail(path, line_no, "bad coordinate '" + s + "'");
  }
}

}  // namespace

MobilityTrace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_trace: cannot open '" + path + "'");
  }
  MobilityTrace trace;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  long long prev_step = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "step,event,node_id,kind,x,y") {
        parse_fail(path, line_no, "expected header 'step,event,node_id,kind,x,y'");
      }
      header_seen = true;
      continue;
    }
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 6) {
      parse_fail(path, line_no, "expected 6 fields, got " + std::to_string(f.size()));
    }
    long long step = 0;
    try {
      std::size_t used = 0;
      step = std::stoll(f[0], &used);
      if (used != f[0].size()) throw std::invalid_argument(f[0]);
    } catch (const std::exception&) {
      parse_fail(path, line_no, "bad step '" + f[0] + "'");
    }
    if (step < 1) parse_fail(path, line_no, "step must be >= 1");
    if (step < prev_step) parse_fail(path, line_no, "steps must be non-decreasing");
    prev_step = step;
    if (trace.steps.size() < static_cast<std::size_t>(step)) {
      trace.steps.resize(static_cast<std::size_t>(step));
    }
    TraceStep& st = trace.steps[static_cast<std::size_t>(step - 1)];

    NodeId id = 0;
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(f[2], &used);
      if (used != f[2].size()) throw std::invalid_argument(f[2]);
      id = static_cast<NodeId>(v);
    } catch (const std::exception&) {
      parse_fail(path, line_no, "bad node_id '" + f[2] + "'");
    }

    const std::string& event = f[1];
    if (event == "arrive") {
      NodeKind kind;
      try {
        kind = node_kind_from_string(f[3]);
      } catch (const std::exception&) {
        parse_fail(path, line_no, "bad kind '" + f[3] + "'");
      }
      st.arrivals.push_back(
          {id, kind, {parse_coord(f[4], path, line_no), parse_coord(f[5], path, line_no)}});
    } else if (event == "move") {
      if (!f[3].empty()) parse_fail(path, line_no, "kind must be empty for move");
      st.moves.push_back(
          {id, {parse_coord(f[4], path, line_no), parse_coord(f[5], path, line_no)}});
    } else if (event == "depart") {
      if (!f[3].empty() || !f[4].empty() || !f[5].empty()) {
        parse_fail(path, line_no, "kind and coordinates must be empty for depart");
      }
      st.departures.push_back(id);
    } else {
      parse_fail(path, line_no, "unknown event '" + event + "'");
    }
  }
  if (!header_seen) {
    throw std::runtime_error(path + ": missing trace header");
  }
  trace.validate();
  return trace;
}

}  // namespace vanet
