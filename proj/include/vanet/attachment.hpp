#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "vanet/graph.hpp"
#include "vanet/rng.hpp"

namespace vanet {

// Floor applied to connection probabilities before normalization, so that
// rounding never strands a candidate at exactly zero mass.
inline constexpr double kDefaultEpsilon = 1e-12;

// The candidate pool a joining node can see, with degrees frozen at
// selection time. All probabilities for one placement are computed from
// this snapshot, so the insertion order of the resulting links cannot
// influence the selection.
struct LocalWorld {
  struct Member {
    NodeId id;
    std::uint32_t degree;
  };

  std::vector<Member> members;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }

  std::uint64_t degree_sum() const {
    std::uint64_t sum = 0;
    for (const Member& m : members) sum += m.degree;
    return sum;
  }
};

// Raised when a degree-weighted kernel is asked to divide by a zero local
// degree sum. Callers substitute uniform selection.
class DegenerateWorldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Baseline local-world connection probability for member i:
//   (M / (m0 + t)) * k_i / sum_j k_j
// M is the local-world size drawn by the joining node, m0 + t the current
// network size. Requires M <= m0 + t and a positive local degree sum.
double baseline_prob(const LocalWorld& lw, std::uint32_t M, std::uint32_t m0,
                     std::uint64_t t, std::size_t i);

// Hybrid connection probability for member i:
//   p / M_i  +  k_i * (1 - p) / sum_j k_j
// The uniform term carries weight p, the degree-preferential term 1 - p.
// For p < 1 a zero degree sum raises DegenerateWorldError.
double hybrid_prob(const LocalWorld& lw, double p, std::size_t i);

// Kernel evaluated over the whole local world, with the degenerate
// zero-degree case replaced by uniform 1 / M_i entries.
std::vector<double> hybrid_connection_probs(const LocalWorld& lw, double p);
std::vector<double> baseline_connection_probs(const LocalWorld& lw, std::uint32_t M,
                                              std::uint32_t m0, std::uint64_t t);

// Clamps entries below epsilon up to epsilon, then rescales so the vector
// sums to 1 (within 1e-9). Idempotent on already valid vectors.
std::vector<double> preprocess_and_normalize(std::vector<double> raw, double epsilon);

// Draws min(m, |lw|) distinct members. If fewer than m entries carry
// probability above epsilon, falls back to uniform without-replacement
// sampling over all members; otherwise draws sequentially, renormalizing
// the remaining mass after each pick. Returned ids are in draw order and
// never contain duplicates.
std::vector<NodeId> sample_targets(const LocalWorld& lw, const std::vector<double>& probs,
                                   std::size_t m, double epsilon, Rng& rng);

}  // namespace vanet
