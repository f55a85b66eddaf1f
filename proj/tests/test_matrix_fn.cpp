#include <doctest.h>

#include "oracles.hpp"
#include "xlab/matrix_fn.hpp"
#include "xlab/rng.hpp"

using namespace xlab;

TEST_CASE("gen_mean_zero_fn invariants hold by construction") {
  for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
    for (int d : {1, 2, 4}) {
      const MatrixFn f = gen_mean_zero_fn(seed, 6, d);
      f.validate();
      CHECK(f.max_spectral == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(f.frobenius_total > 0.0);
    }
  }
  CHECK_THROWS_AS(gen_mean_zero_fn(1, 1, 2), InvalidInput);
}

TEST_CASE("two-point function is antisymmetric") {
  const MatrixFn f = gen_mean_zero_fn(5, 2, 3);
  CHECK(max_abs(Matrix(f.table[0] + f.table[1])) <= 1e-14);
}

TEST_CASE("scalar function lies in [-1, 1] and sums to zero") {
  const MatrixFn f = gen_mean_zero_fn(11, 8, 1);
  double sum = 0.0;
  for (const auto& m : f.table) {
    CHECK(std::abs(m(0, 0).imag()) == 0.0);
    CHECK(std::abs(m(0, 0).real()) <= 1.0 + 1e-12);
    sum += m(0, 0).real();
  }
  CHECK(std::abs(sum) <= 1e-12);
}

TEST_CASE("empirical_mean") {
  const MatrixFn f = gen_mean_zero_fn(7, 4, 2);
  Walk constant;
  constant.vertices = {2, 2, 2};
  CHECK(max_abs(Matrix(empirical_mean(f, constant).mat() - f.table[2])) <= 1e-14);

  // antisymmetric two-point walk gives zero
  const MatrixFn g = gen_mean_zero_fn(7, 2, 2);
  Walk pair;
  pair.vertices = {0, 1};
  CHECK(max_abs(empirical_mean(g, pair).mat()) <= 1e-14);

  // matches direct accumulation in a different order
  SplitMix64 rng(13);
  Walk w;
  for (int i = 0; i < 9; ++i) w.vertices.push_back(static_cast<int>(rng.below(4)));
  Matrix direct = Matrix::Zero(2, 2);
  for (auto it = w.vertices.rbegin(); it != w.vertices.rend(); ++it) direct += f.table[*it];
  direct /= 9.0;
  CHECK(max_abs(Matrix(empirical_mean(f, w).mat() - direct)) <= 1e-13);

  Walk out_of_range;
  out_of_range.vertices = {5};
  CHECK_THROWS_AS(empirical_mean(f, out_of_range), InvalidInput);

  // norm of the average never exceeds the per-vertex cap
  for (std::uint64_t s = 0; s < 20; ++s) {
    Walk rw;
    SplitMix64 r2(derived_seed(21, s));
    for (int i = 0; i < 6; ++i) rw.vertices.push_back(static_cast<int>(r2.below(4)));
    CHECK(spectral_norm(empirical_mean(f, rw).mat()) <= 1.0 + 1e-10);
  }
}

TEST_CASE("negated flips sign and preserves invariants") {
  const MatrixFn f = gen_mean_zero_fn(3, 5, 2);
  const MatrixFn g = negated(f);
  g.validate();
  for (int v = 0; v < f.n; ++v) CHECK(max_abs(Matrix(f.table[v] + g.table[v])) == 0.0);
}
