#pragma once

#include <cstdint>
#include <vector>

#include "xlab/linalg.hpp"
#include "xlab/walk.hpp"

namespace xlab {

// Hermitian d x d matrix assigned to each vertex, with sum_v f(v) = 0 and
// max_v ||f(v)|| <= 1. F is the aggregate Frobenius mass sqrt(sum ||f(v)||_2^2).
struct MatrixFn {
  int n = 0;
  int d = 0;
  std::vector<Matrix> table;
  double frobenius_total = 0.0;  // F
  double max_spectral = 0.0;     // M

  void validate() const;
};

// n random Hermitian matrices (i.i.d. standard complex entries, real
// diagonal), recentered to mean zero and scaled so max_v ||f(v)|| = 1.
MatrixFn gen_mean_zero_fn(std::uint64_t rng_seed, int n, int d);

MatrixFn negated(const MatrixFn& f);

// (1/k) sum_j f(v_j) over the walk.
HermitianMatrix empirical_mean(const MatrixFn& f, const Walk& w);

}  // namespace xlab
