#include "vanet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

#include "vanet/rng.hpp"

namespace vanet {

namespace {

std::string id_str(NodeId id) { return std::to_string(id); }

}  // namespace

void Graph::add_node(NodeId id) {
  if (has_node(id)) {
    throw std::invalid_argument("add_node: duplicate node id " + id_str(id));
  }
  adjacency_.emplace(id, std::unordered_set<NodeId>{});
  degree_.emplace(id, 0);
}

const std::unordered_set<NodeId>& Graph::adj_of(NodeId id, const char* op) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end()) {
    throw std::invalid_argument(std::string(op) + ": unknown node id " + id_str(id));
  }
  return it->second;
}

bool Graph::add_edge(NodeId i, NodeId j) {
  if (i == j) {
    throw std::invalid_argument("add_edge: self-loop on node " + id_str(i));
  }
  adj_of(i, "add_edge");
  adj_of(j, "add_edge");
  if (!adjacency_[i].insert(j).second) {
    return false;  // already present, graph unchanged
  }
  adjacency_[j].insert(i);
  ++degree_[i];
  ++degree_[j];
  ++edge_count_;
  return true;
}

void Graph::remove_edge(NodeId i, NodeId j) {
  adj_of(i, "remove_edge");
  adj_of(j, "remove_edge");
  if (adjacency_[i].erase(j) == 0) {
    throw std::invalid_argument("remove_edge: edge {" + id_str(i) + "," + id_str(j) +
                                "} not present");
  }
  adjacency_[j].erase(i);
  --degree_[i];
  --degree_[j];
  --edge_count_;
}

void Graph::remove_node(NodeId id) {
  const auto& nbrs = adj_of(id, "remove_node");
  for (NodeId j : nbrs) {
    adjacency_[j].erase(id);
    --degree_[j];
    --edge_count_;
  }
  adjacency_.erase(id);
  degree_.erase(id);
}

bool Graph::has_edge(NodeId i, NodeId j) const {
  auto it = adjacency_.find(i);
  return it != adjacency_.end() && it->second.count(j) != 0;
}

std::uint32_t Graph::degree(NodeId id) const {
  auto it = degree_.find(id);
  if (it == degree_.end()) {
    throw std::invalid_argument("degree: unknown node id " + id_str(id));
  }
  return it->second;
}

const std::unordered_set<NodeId>& Graph::neighbors(NodeId id) const {
  return adj_of(id, "neighbors");
}

std::vector<NodeId> Graph::sorted_nodes() const {
  std::vector<NodeId> ids;
  ids.reserve(adjacency_.size());
  for (const auto& [id, _] : adjacency_) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<std::pair<NodeId, NodeId>> Graph::sorted_edges() const {
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(edge_count_);
  for (const auto& [i, nbrs] : adjacency_) {
    for (NodeId j : nbrs) {
      if (i < j) edges.emplace_back(i, j);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<NodeId> Graph::largest_component() const {
  if (adjacency_.empty()) {
    throw std::domain_error("largest_component: empty graph");
  }
  std::unordered_set<NodeId> visited;
  visited.reserve(adjacency_.size());
  std::vector<NodeId> best;
  std::vector<NodeId> current;
  std::deque<NodeId> queue;
  for (NodeId start : sorted_nodes()) {
    if (visited.count(start)) continue;
    current.clear();
    queue.clear();
    queue.push_back(start);
    visited.insert(start);
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      current.push_back(u);
      for (NodeId v : adjacency_.at(u)) {
        if (visited.insert(v).second) queue.push_back(v);
      }
    }
    if (current.size() > best.size()) best = current;
  }
  std::sort(best.begin(), best.end());
  return best;
}

double Graph::lcc_fraction() const {
  if (adjacency_.empty()) {
    throw std::domain_error("lcc_fraction: empty graph");
  }
  // Union-find, cheap enough to run every simulation step. Ids are mapped
  // straight into an array when they are reasonably dense (the usual case
  // for grown topologies) and through a hash map otherwise.
  NodeId max_id = 0;
  for (const auto& [id, _] : adjacency_) max_id = std::max(max_id, id);

  std::vector<std::uint32_t> dense;
  std::unordered_map<NodeId, std::uint32_t> sparse;
  const bool use_dense =
      static_cast<std::size_t>(max_id) < 4 * adjacency_.size() + 64;
  std::uint32_t next = 0;
  if (use_dense) {
    dense.assign(static_cast<std::size_t>(max_id) + 1, 0);
    for (const auto& [id, _] : adjacency_) dense[id] = next++;
  } else {
    sparse.reserve(adjacency_.size());
    for (const auto& [id, _] : adjacency_) sparse.emplace(id, next++);
  }
  auto index_of = [&](NodeId id) { return use_dense ? dense[id] : sparse.at(id); };

  std::vector<std::uint32_t> parent(adjacency_.size());
  for (std::uint32_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&parent](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [i, nbrs] : adjacency_) {
    const std::uint32_t a = index_of(i);
    for (NodeId j : nbrs) {
      if (j < i) continue;  // each edge once
      const std::uint32_t ra = find(a);
      const std::uint32_t rb = find(index_of(j));
      if (ra != rb) parent[ra] = rb;
    }
  }
  std::vector<std::uint32_t> sizes(parent.size(), 0);
  std::uint32_t best = 0;
  for (std::uint32_t v = 0; v < parent.size(); ++v) {
    best = std::max(best, ++sizes[find(v)]);
  }
  return static_cast<double>(best) / static_cast<double>(adjacency_.size());
}

double Graph::average_path_length(std::optional<std::size_t> source_sample,
                                  std::uint64_t rng_seed) const {
  const std::vector<NodeId> lcc = largest_component();
  const std::size_t n = lcc.size();
  if (n < 2) {
    throw std::domain_error("average_path_length: largest component has fewer than 2 nodes");
  }

  // Dense reindexing of the component for cheap BFS.
  std::unordered_map<NodeId, std::uint32_t> index;
  index.reserve(n);
  for (std::size_t i = 0; i < n; ++i) index.emplace(lcc[i], static_cast<std::uint32_t>(i));
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& nbrs = adjacency_.at(lcc[i]);
    adj[i].reserve(nbrs.size());
    for (NodeId v : nbrs) adj[i].push_back(index.at(v));
    std::sort(adj[i].begin(), adj[i].end());
  }

  std::vector<std::uint32_t> sources;
  if (source_sample && *source_sample < n) {
    Rng rng(rng_seed);
    std::vector<std::size_t> picks = rng.sample_indices(n, *source_sample);
    std::sort(picks.begin(), picks.end());
    sources.assign(picks.begin(), picks.end());
  } else {
    sources.resize(n);
    for (std::size_t i = 0; i < n; ++i) sources[i] = static_cast<std::uint32_t>(i);
  }

  std::uint64_t total_hops = 0;
  std::vector<std::int32_t> dist(n);
  std::vector<std::uint32_t> frontier;
  for (std::uint32_t src : sources) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    frontier.assign(1, src);
    std::size_t head = 0;
    while (head < frontier.size()) {
      std::uint32_t u = frontier[head++];
      for (std::uint32_t v : adj[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          frontier.push_back(v);
          total_hops += static_cast<std::uint64_t>(dist[v]);
        }
      }
    }
  }
  const double pairs = static_cast<double>(sources.size()) * static_cast<double>(n - 1);
  return static_cast<double>(total_hops) / pairs;
}

double Graph::degree_variance() const {
  if (degree_.empty()) {
    throw std::domain_error("degree_variance: empty subset");
  }
  double sum = 0.0;
  for (const auto& [_, d] : degree_) sum += static_cast<double>(d);
  const double mean = sum / static_cast<double>(degree_.size());
  double ss = 0.0;
  for (const auto& [_, d] : degree_) {
    const double dd = static_cast<double>(d) - mean;
    ss += dd * dd;
  }
  return ss / static_cast<double>(degree_.size());
}

double Graph::degree_variance(std::span<const NodeId> subset) const {
  if (subset.empty()) {
    throw std::domain_error("degree_variance: empty subset");
  }
  double sum = 0.0;
  for (NodeId id : subset) sum += static_cast<double>(degree(id));
  const double mean = sum / static_cast<double>(subset.size());
  double ss = 0.0;
  for (NodeId id : subset) {
    const double d = static_cast<double>(degree(id)) - mean;
    ss += d * d;
  }
  return ss / static_cast<double>(subset.size());
}

void Graph::audit() const {
  if (adjacency_.size() != degree_.size()) {
    throw std::logic_error("audit: node set and degree map out of sync");
  }
  std::uint64_t degree_total = 0;
  for (const auto& [i, nbrs] : adjacency_) {
    if (nbrs.count(i) != 0) {
      throw std::logic_error("audit: self-loop on node " + id_str(i));
    }
    auto dit = degree_.find(i);
    if (dit == degree_.end() || dit->second != nbrs.size()) {
      throw std::logic_error("audit: stale degree for node " + id_str(i));
    }
    degree_total += nbrs.size();
    for (NodeId j : nbrs) {
      auto jt = adjacency_.find(j);
      if (jt == adjacency_.end() || jt->second.count(i) == 0) {
        throw std::logic_error("audit: asymmetric edge {" + id_str(i) + "," + id_str(j) + "}");
      }
    }
  }
  if (degree_total != 2 * static_cast<std::uint64_t>(edge_count_)) {
    throw std::logic_error("audit: degree total does not equal twice the edge count");
  }
}

}  // namespace vanet
