#include "xlab/walk.hpp"

#include "xlab/rng.hpp"

namespace xlab {

namespace {

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

int ceil_log2(int x) {
  int bits = 0;
  while ((1 << bits) < x) ++bits;
  return bits;
}

}  // namespace

WalkSeed WalkSeed::from_string(const std::string& zeros_ones) {
  WalkSeed s;
  s.bits.reserve(zeros_ones.size());
  for (char c : zeros_ones) {
    if (c != '0' && c != '1') throw InvalidInput("WalkSeed: bits must be '0' or '1'");
    s.bits.push_back(c == '1');
  }
  return s;
}

std::string WalkSeed::to_string() const {
  std::string out;
  out.reserve(bits.size());
  for (bool b : bits) out.push_back(b ? '1' : '0');
  return out;
}

int seed_bits_needed(int n, int degree, int k) {
  if (n < 1 || degree < 1 || k < 1) throw InvalidInput("seed_bits_needed: bad parameters");
  return ceil_log2(n) + (k - 1) * ceil_log2(degree);
}

Walk seeded_walk(const ExpanderGraph& g, const WalkSeed& seed, int k) {
  if (k < 1) throw InvalidInput("seeded_walk: need k >= 1");
  if (!is_power_of_two(g.n) || !is_power_of_two(g.degree))
    throw UnsupportedGraph("seeded_walk: n and D must be powers of two; use random_walk");
  const int r = seed_bits_needed(g.n, g.degree, k);
  if (static_cast<int>(seed.bits.size()) != r)
    throw InvalidInput("seeded_walk: seed length != r for this (n, D, k)");

  std::size_t pos = 0;
  const auto take = [&seed, &pos](int nbits) {
    int value = 0;
    for (int i = 0; i < nbits; ++i) value = (value << 1) | (seed.bits[pos++] ? 1 : 0);
    return value;
  };

  Walk w;
  w.vertices.reserve(k);
  int v = take(ceil_log2(g.n));
  w.vertices.push_back(v);
  const int slot_bits = ceil_log2(g.degree);
  for (int step = 1; step < k; ++step) {
    v = g.adj[v][take(slot_bits)];
    w.vertices.push_back(v);
  }
  return w;
}

Walk random_walk(const ExpanderGraph& g, std::uint64_t rng_seed, int k) {
  if (k < 1) throw InvalidInput("random_walk: need k >= 1");
  SplitMix64 rng(rng_seed);
  Walk w;
  w.vertices.reserve(k);
  int v = static_cast<int>(rng.below(g.n));
  w.vertices.push_back(v);
  for (int step = 1; step < k; ++step) {
    v = g.adj[v][rng.below(g.degree)];
    w.vertices.push_back(v);
  }
  return w;
}

}  // namespace xlab
