#pragma once

#include <cstdint>
#include <vector>

#include "xlab/graph.hpp"
#include "xlab/matrix_fn.hpp"

namespace xlab {

enum class BoundVariant {
  Chernoff80,  // d^(2 - pi/4) * exp(-eps^2 (1-lambda) k / 80)
  Chain72,     // d^(2 - pi/4) * exp(-k eps^2 (1-lambda) / 72), the assembled-chain form
};

double bound_main(int d, double lambda, int k, double epsilon,
                  BoundVariant variant = BoundVariant::Chernoff80);

// The numeric chain the Chain72 form is distilled from, evaluated at its
// exponent scale t = (1-lambda) eps / 36:
//   d^(2-pi/4) exp((4/pi)^2 * 9 k t^2 / (1-lambda) - k t eps).
// Always <= the Chain72 form, which is <= the Chernoff80 form.
double bound_chain_assembled(int d, double lambda, int k, double epsilon);

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

// 95% Wilson score interval; well-behaved at small p.
WilsonInterval wilson95(std::uint64_t successes, std::uint64_t trials);

struct TailReport {
  int n = 0;
  int d = 0;
  int k = 0;
  double epsilon = 0.0;
  double lambda = 0.0;
  std::uint64_t trials = 0;  // 0 = exact enumeration
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double bound = 0.0;
  bool satisfied = false;
};

// Monte-Carlo estimate of P[lambda_max((1/k) sum f(v_j)) >= eps] over
// stationary walks; ties at eps count as exceedance. lower_tail runs the
// sign-flipped function, giving P[lambda_min <= -eps]. Trials use seeds
// derived from (rng_seed, trial index), so the estimate is independent of
// the thread split.
TailReport tail_mc(const ExpanderGraph& g, const MatrixFn& f, int k, double epsilon,
                   std::uint64_t trials, std::uint64_t rng_seed, bool lower_tail = false);

// Exact tail by depth-first enumeration of all n * D^(k-1) equiprobable
// slot-paths; the probability is an integer count ratio. Enumeration budget
// n * D^(k-1) <= 1e8.
TailReport tail_exact(const ExpanderGraph& g, const MatrixFn& f, int k, double epsilon,
                      bool lower_tail = false);

// One enumeration shared across several thresholds.
std::vector<TailReport> tail_exact_multi(const ExpanderGraph& g, const MatrixFn& f, int k,
                                         const std::vector<double>& epsilons,
                                         bool lower_tail = false);

std::uint64_t walk_count(const ExpanderGraph& g, int k);  // n * D^(k-1), checked

}  // namespace xlab
