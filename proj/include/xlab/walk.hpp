#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xlab/graph.hpp"

namespace xlab {

struct Walk {
  std::vector<int> vertices;
  int length() const { return static_cast<int>(vertices.size()); }
};

// Bit string feeding the derandomized sampler. Length is exactly
// ceil(log2 n) + (k-1) * ceil(log2 D) for the target (n, D, k).
struct WalkSeed {
  std::vector<bool> bits;

  static WalkSeed from_string(const std::string& zeros_ones);
  std::string to_string() const;
};

int seed_bits_needed(int n, int degree, int k);

// Deterministic sampler: the first ceil(log2 n) bits (big-endian) pick the
// start vertex, each following ceil(log2 D) group picks the slot in the
// ordered adjacency list. Requires n and D to be powers of two so every bit
// pattern is a valid choice; other graphs must use random_walk.
Walk seeded_walk(const ExpanderGraph& g, const WalkSeed& seed, int k);

// Stationary walk: uniform start (rejection-sampled, unbiased), then uniform
// slot choices, all from the SplitMix64 stream of rng_seed.
Walk random_walk(const ExpanderGraph& g, std::uint64_t rng_seed, int k);

}  // namespace xlab
