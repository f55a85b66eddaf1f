#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "xlab/rng.hpp"
#include "xlab/walk.hpp"

using namespace xlab;

TEST_CASE("seed length formula") {
  CHECK(seed_bits_needed(4, 2, 3) == 4);
  CHECK(seed_bits_needed(2, 2, 1) == 1);
  CHECK(seed_bits_needed(16, 8, 5) == 4 + 4 * 3);
}

TEST_CASE("seeded_walk forced example") {
  const ExpanderGraph g = build_cycle(4);
  const Walk w = seeded_walk(g, WalkSeed::from_string("0010"), 3);
  CHECK(w.vertices == std::vector<int>{0, 3, 0});

  const Walk zeros = seeded_walk(g, WalkSeed::from_string("0000"), 3);
  CHECK(zeros.vertices == std::vector<int>{0, 1, 0});  // first neighbor each step
}

TEST_CASE("seeded_walk rejects unsupported shapes") {
  CHECK_THROWS_AS(seeded_walk(build_cycle(5), WalkSeed::from_string("000"), 1), UnsupportedGraph);
  CHECK_THROWS_AS(seeded_walk(build_cycle(4), WalkSeed::from_string("000"), 3), InvalidInput);
  CHECK_THROWS_AS(WalkSeed::from_string("01x"), InvalidInput);
}

TEST_CASE("seed enumeration is a bijection onto slot paths") {
  // every walk (with slot multiplicity) appears exactly once across all 2^r
  // seeds, so the induced law is exactly the stationary walk law
  const ExpanderGraph g = build_cycle(4);
  for (int k = 1; k <= 6; ++k) {
    const int r = seed_bits_needed(g.n, g.degree, k);
    const std::uint64_t total = 1ULL << r;
    std::map<std::vector<int>, std::uint64_t> walk_counts;
    for (std::uint64_t s = 0; s < total; ++s) {
      std::string bits(r, '0');
      for (int b = 0; b < r; ++b)
        if (s & (1ULL << (r - 1 - b))) bits[b] = '1';
      const Walk w = seeded_walk(g, WalkSeed::from_string(bits), k);
      ++walk_counts[w.vertices];
      // consecutive vertices adjacent
      for (int i = 1; i < k; ++i) {
        const auto& nb = g.adj[w.vertices[i - 1]];
        CHECK(std::count(nb.begin(), nb.end(), w.vertices[i]) > 0);
      }
    }
    // stationary law: walk probability = (slot multiplicity) / (n D^(k-1));
    // compare against direct slot-path counting
    std::map<std::vector<int>, std::uint64_t> expect;
    std::vector<int> cur;
    const auto enumerate = [&](auto&& self, int v, int depth) -> void {
      cur.push_back(v);
      if (depth == k) {
        ++expect[cur];
      } else {
        for (int u : g.adj[v]) self(self, u, depth + 1);
      }
      cur.pop_back();
    };
    for (int v = 0; v < g.n; ++v) enumerate(enumerate, v, 1);
    CHECK(walk_counts == expect);
  }
}

TEST_CASE("random_walk determinism and stationarity") {
  const ExpanderGraph g = build_margulis(4);
  const Walk w1 = random_walk(g, 42, 12);
  const Walk w2 = random_walk(g, 42, 12);
  CHECK(w1.vertices == w2.vertices);
  const Walk w3 = random_walk(g, 43, 12);
  CHECK(w1.vertices != w3.vertices);

  // chi-square uniformity of each position over 1e5 walks
  const int walks = 100000;
  const int k = 4;
  std::vector<std::vector<int>> counts(k, std::vector<int>(g.n, 0));
  for (int i = 0; i < walks; ++i) {
    const Walk w = random_walk(g, derived_seed(1000, i), k);
    for (int j = 0; j < k; ++j) ++counts[j][w.vertices[j]];
  }
  for (int j = 0; j < k; ++j) {
    double stat = 0.0;
    const double expect = static_cast<double>(walks) / g.n;
    for (int v = 0; v < g.n; ++v) {
      const double diff = counts[j][v] - expect;
      stat += diff * diff / expect;
    }
    CHECK(oracle::chi2_pvalue(stat, g.n - 1) > 0.001);
  }
}

TEST_CASE("complete graph walk is i.i.d. uniform") {
  const ExpanderGraph g = build_complete_loops(4);
  const int walks = 100000;
  // joint distribution of consecutive pairs should be uniform on n x n
  std::vector<int> pair_counts(g.n * g.n, 0);
  for (int i = 0; i < walks; ++i) {
    const Walk w = random_walk(g, derived_seed(77, i), 2);
    ++pair_counts[w.vertices[0] * g.n + w.vertices[1]];
  }
  double stat = 0.0;
  const double expect = static_cast<double>(walks) / (g.n * g.n);
  for (int c : pair_counts) {
    const double diff = c - expect;
    stat += diff * diff / expect;
  }
  CHECK(oracle::chi2_pvalue(stat, g.n * g.n - 1) > 0.001);
}

TEST_CASE("chi-square helper sanity") {
  // median of chi2 with 1 dof is ~0.455
  CHECK(oracle::chi2_pvalue(0.455, 1) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(oracle::chi2_pvalue(100.0, 1) < 1e-10);
}
