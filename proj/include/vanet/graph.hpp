#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace vanet {

using NodeId = std::uint32_t;

// When the largest connected component exceeds this many nodes, path-length
// queries fall back to this many BFS sources unless told otherwise.
inline constexpr std::size_t kDefaultAplSources = 256;

// Dynamic undirected simple graph with incrementally maintained degrees.
//
// Invariants kept at all times (see audit()):
//   - symmetry: j in adj[i] iff i in adj[j]
//   - no self-loops, no multi-edges
//   - degree[i] == |adj[i]|, sum of degrees == 2 * edge count
//
// Instances are single-writer; all query methods are const and may run
// concurrently on a snapshot (copy) of the graph.
class Graph {
 public:
  // Adds an isolated node. Throws std::invalid_argument if the id exists.
  void add_node(NodeId id);

  // Inserts the undirected edge {i, j}. Returns true if the edge was newly
  // inserted, false if it already existed (no change). Throws on self-loop
  // or missing endpoint.
  bool add_edge(NodeId i, NodeId j);

  // Throws std::invalid_argument if the edge is absent.
  void remove_edge(NodeId i, NodeId j);

  // Detaches all incident edges, then deletes the node.
  void remove_node(NodeId id);

  bool has_node(NodeId id) const { return adjacency_.count(id) != 0; }
  bool has_edge(NodeId i, NodeId j) const;
  std::uint32_t degree(NodeId id) const;

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  const std::unordered_set<NodeId>& neighbors(NodeId id) const;

  // Node ids in ascending order.
  std::vector<NodeId> sorted_nodes() const;

  // Edge list with i < j, ordered lexicographically. Used for pruning,
  // serialization and determinism checks.
  std::vector<std::pair<NodeId, NodeId>> sorted_edges() const;

  // |largest connected component| / |nodes|. Throws std::domain_error on
  // an empty graph.
  double lcc_fraction() const;

  // Ids of the largest connected component, ascending. Ties go to the
  // component containing the smallest id.
  std::vector<NodeId> largest_component() const;

  // Mean shortest-path hop count over ordered reachable pairs inside the
  // largest connected component. When source_sample is given and smaller
  // than the component, BFS runs from that many uniformly sampled sources
  // (seeded) and the estimate averages over those rows. Throws
  // std::domain_error if the component has fewer than 2 nodes.
  double average_path_length(std::optional<std::size_t> source_sample,
                             std::uint64_t rng_seed) const;

  // Population variance of node degrees (divide by count).
  double degree_variance() const;
  double degree_variance(std::span<const NodeId> subset) const;

  // Full consistency check of every structural invariant. Throws
  // std::logic_error with a description on the first violation.
  void audit() const;

 private:
  const std::unordered_set<NodeId>& adj_of(NodeId id, const char* op) const;

  std::unordered_map<NodeId, std::unordered_set<NodeId>> adjacency_;
  std::unordered_map<NodeId, std::uint32_t> degree_;
  std::size_t edge_count_ = 0;
};

}  // namespace vanet
