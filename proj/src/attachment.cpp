#include "vanet/attachment.hpp"

#include <algorithm>
#include <numeric>

namespace vanet {

namespace {

void check_index(const LocalWorld& lw, std::size_t i, const char* op) {
  if (i >= lw.size()) {
    throw std::invalid_argument(std::string(op) + ": member index out of range");
  }
}

}  // namespace

double baseline_prob(const LocalWorld& lw, std::uint32_t M, std::uint32_t m0,
                     std::uint64_t t, std::size_t i) {
  check_index(lw, i, "baseline_prob");
  if (M == 0 || M > m0 + t) {
    throw std::invalid_argument("baseline_prob: require 1 <= M <= m0 + t");
  }
  const std::uint64_t sum = lw.degree_sum();
  if (sum == 0) {
    throw DegenerateWorldError("baseline_prob: zero local degree sum");
  }
  const double member_factor = static_cast<double>(M) / static_cast<double>(m0 + t);
  return member_factor * static_cast<double>(lw.members[i].degree) / static_cast<double>(sum);
}

double hybrid_prob(const LocalWorld& lw, double p, std::size_t i) {
  check_index(lw, i, "hybrid_prob");
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("hybrid_prob: p must lie in [0, 1]");
  }
  const double uniform_term = p / static_cast<double>(lw.size());
  if (p == 1.0) return uniform_term;
  const std::uint64_t sum = lw.degree_sum();
  if (sum == 0) {
    throw DegenerateWorldError("hybrid_prob: zero local degree sum with p < 1");
  }
  return uniform_term +
         static_cast<double>(lw.members[i].degree) * (1.0 - p) / static_cast<double>(sum);
}

std::vector<double> hybrid_connection_probs(const LocalWorld& lw, double p) {
  if (lw.empty()) {
    throw std::invalid_argument("hybrid_connection_probs: empty local world");
  }
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("hybrid_connection_probs: p must lie in [0, 1]");
  }
  std::vector<double> probs(lw.size());
  const double uniform_term = p / static_cast<double>(lw.size());
  const std::uint64_t sum = lw.degree_sum();  // computed once for the whole world
  if (p < 1.0 && sum == 0) {
    std::fill(probs.begin(), probs.end(), 1.0 / static_cast<double>(lw.size()));
    return probs;
  }
  const double pref_scale = p == 1.0 ? 0.0 : (1.0 - p) / static_cast<double>(sum);
  for (std::size_t i = 0; i < lw.size(); ++i) {
    probs[i] = uniform_term + static_cast<double>(lw.members[i].degree) * pref_scale;
  }
  return probs;
}

std::vector<double> baseline_connection_probs(const LocalWorld& lw, std::uint32_t M,
                                              std::uint32_t m0, std::uint64_t t) {
  if (lw.empty()) {
    throw std::invalid_argument("baseline_connection_probs: empty local world");
  }
  if (M == 0 || M > m0 + t) {
    throw std::invalid_argument("baseline_connection_probs: require 1 <= M <= m0 + t");
  }
  std::vector<double> probs(lw.size());
  const std::uint64_t sum = lw.degree_sum();
  if (sum == 0) {
    std::fill(probs.begin(), probs.end(), 1.0 / static_cast<double>(lw.size()));
    return probs;
  }
  const double scale =
      static_cast<double>(M) / static_cast<double>(m0 + t) / static_cast<double>(sum);
  for (std::size_t i = 0; i < lw.size(); ++i) {
    probs[i] = static_cast<double>(lw.members[i].degree) * scale;
  }
  return probs;
}

std::vector<double> preprocess_and_normalize(std::vector<double> raw, double epsilon) {
  if (raw.empty()) {
    throw std::invalid_argument("preprocess_and_normalize: empty probability vector");
  }
  double sum = 0.0;
  for (double& v : raw) {
    if (v < 0.0) {
      throw std::invalid_argument("preprocess_and_normalize: negative entry");
    }
    if (v < epsilon) v = epsilon;
    sum += v;
  }
  for (double& v : raw) v /= sum;
  return raw;
}

std::vector<NodeId> sample_targets(const LocalWorld& lw, const std::vector<double>& probs,
                                   std::size_t m, double epsilon, Rng& rng) {
  if (m == 0) {
    throw std::invalid_argument("sample_targets: m must be >= 1");
  }
  if (probs.size() != lw.size()) {
    throw std::invalid_argument("sample_targets: probability vector misaligned with local world");
  }
  const std::size_t want = std::min(m, lw.size());
  std::vector<NodeId> picked;
  picked.reserve(want);

  const std::size_t valid =
      static_cast<std::size_t>(std::count_if(probs.begin(), probs.end(),
                                             [epsilon](double v) { return v > epsilon; }));
  if (valid < m) {
    // Too few usable entries: uniform without-replacement fallback.
    for (std::size_t idx : rng.sample_indices(lw.size(), want)) {
      picked.push_back(lw.members[idx].id);
    }
    return picked;
  }

  // Sequential weighted draws; after each pick the remaining mass is
  // renormalized implicitly by drawing against the shrinking total.
  std::vector<std::size_t> remaining(lw.size());
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  std::vector<double> weight(probs);
  double mass = std::accumulate(weight.begin(), weight.end(), 0.0);
  for (std::size_t draw = 0; draw < want; ++draw) {
    const double target = rng.uniform01() * mass;
    double acc = 0.0;
    std::size_t chosen_slot = remaining.size() - 1;  // guards against fp shortfall
    for (std::size_t slot = 0; slot < remaining.size(); ++slot) {
      acc += weight[remaining[slot]];
      if (target < acc) {
        chosen_slot = slot;
        break;
      }
    }
    const std::size_t chosen = remaining[chosen_slot];
    picked.push_back(lw.members[chosen].id);
    mass -= weight[chosen];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(chosen_slot));
  }
  return picked;
}

}  // namespace vanet
