#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace vanet {

// splitmix64 finalizer, used as the mixing step for seed derivation.
std::uint64_t splitmix64(std::uint64_t x);

// Deterministic sub-seed for a numbered stream under a master seed.
// Every parallel job derives its own seed this way, so sweep results are
// reproducible from one integer regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// Same, for a named stream ("trace", "engine", ...).
std::uint64_t derive_seed(std::uint64_t master, std::string_view label);

// Seeded generator with hand-rolled draws. std::mt19937_64 is fully
// specified by the standard, and we do not rely on the implementation
// defined std:: distributions, so a (seed, call sequence) pair produces
// the same values everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  // Uniform double in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), bound > 0. Rejection sampling, no
  // modulo bias.
  std::uint64_t uniform_index(std::uint64_t bound);

  // k distinct indices drawn uniformly from [0, n), in draw order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace vanet
