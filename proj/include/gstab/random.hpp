#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gstab/matrix.hpp"

namespace gstab {

std::uint64_t splitmix64(std::uint64_t x);

// A seed plus a pure derivation rule. Replicate k of a stream is a function
// of (base_seed, k) only, so replicates can be generated in any order and on
// any worker without changing what each one draws.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t base_seed) : base_seed_(base_seed) {}

  std::uint64_t base_seed() const { return base_seed_; }
  std::uint64_t replicate_seed(std::uint64_t index) const;
  RandomStream derive(std::uint64_t index) const { return RandomStream(replicate_seed(index)); }
  std::mt19937_64 engine() const { return std::mt19937_64(base_seed_); }

 private:
  std::uint64_t base_seed_;
};

using Engine = std::mt19937_64;

Matrix standard_normal(Index rows, Index cols, Engine& engine);
Vector standard_normal(Index size, Engine& engine);
std::vector<Index> permutation(Index n, Engine& engine);
// k distinct indices from [0, n), returned in ascending order.
std::vector<Index> sample_without_replacement(Index n, Index k, Engine& engine);
Vector random_unit_vector(Index dim, Engine& engine);

}  // namespace gstab
