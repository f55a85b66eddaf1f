#pragma once

#include <cstdint>
#include <vector>

#include "xlab/graph.hpp"
#include "xlab/matrix_fn.hpp"

namespace xlab {

// tables[t][v] = (P^t f)(v) for t = 0..depth-1; each table stays mean-zero
// and, by Jensen, no norm of any entry exceeds the corresponding max over f.
std::vector<std::vector<Matrix>> p_power_table(const ExpanderGraph& g, const MatrixFn& f,
                                               int depth);

// Difference-sequence decomposition of the walk average:
//   (1/k) sum f(v_i) = W + (1/k) sum Z_i,
// Z_i = sum_{t=1..min(k+1-i,T)} Y_i^(t) with Y_1^(t) = P^(t-1) f(v_1),
// Y_i^(t) = P^(t-1) f(v_i) - P^t f(v_{i-1}); W = (1/k) sum_{i<=k-T} (P^T f)(v_i).
struct MartingaleDecomp {
  int truncation = 0;  // T = min(k, ceil(2 ln(F/eps) / (1-lambda)))
  double epsilon_target = 0.0;
  std::vector<Matrix> z;  // k difference terms
  Matrix remainder;       // W, zero when T >= k
};

MartingaleDecomp decompose(const ExpanderGraph& g, const MatrixFn& f, const Walk& walk,
                           double epsilon);

// Exact martingale property: E[Z_i | v_{i-1} = u] = 0 computed analytically
// through P for every conditioning vertex and truncation depth, plus the
// stationary mean of Z_1; also re-checks reconstruction on sampled walks.
struct MartingalePropertyReport {
  int truncation = 0;
  double max_conditional_mean = 0.0;  // entrywise-max over all (depth, u)
  double max_reconstruction_residual = 0.0;
  int walks_checked = 0;
  bool ok = false;
};

MartingalePropertyReport verify_martingale_property(const ExpanderGraph& g, const MatrixFn& f,
                                                    double epsilon, int k, int samples,
                                                    std::uint64_t rng_seed);

// Norm certificates for one decomposition: ||Z_i||_* <= T * M_* for each
// requested norm and ||W||_2 <= eps. Also records the provable
// 2 min(T, k+1-i) M_* bound and the chain value lambda^(T/2) F.
struct BoundsReport {
  int truncation = 0;
  std::vector<Norm> norms;
  std::vector<std::vector<double>> z_norms;  // [norm][i] = ||Z_i||_*
  std::vector<double> max_ratio;      // max_i ||Z_i||_* / (T M_*), per norm
  std::vector<double> max_provable;   // max_i ||Z_i||_* / (2 min(T,k+1-i) M_*)
  double w_norm = 0.0;                // ||W||_2
  double w_chain_value = 0.0;         // lambda^(T/2) F
  double reconstruction_residual = 0.0;
  bool ok = false;
};

BoundsReport verify_bounds(const MartingaleDecomp& decomp, const ExpanderGraph& g,
                           const MatrixFn& f, const Walk& walk, const std::vector<Norm>& norms);

// sum_v ||P f(v)||_2^2 <= lambda sum_v ||f(v)||_2^2 (asserted), with the
// observed ratio and the stronger lambda^2 comparison reported only.
struct ShrinkReport {
  double lhs = 0.0;
  double rhs_lambda = 0.0;
  double ratio = 0.0;  // lhs / sum ||f||^2
  double lambda = 0.0;
  bool holds_lambda = false;
  bool holds_lambda_sq = false;  // informational
};

ShrinkReport verify_shrink(const ExpanderGraph& g, const MatrixFn& f);

// Monte-Carlo fit of the martingale-route tail shape
// 2d exp(-c k eps^2 (1-lambda)^2 / ln^2(nd)): c_fit is the largest constant
// keeping the shape above every measured tail point. Reported, not asserted;
// the route only pins the shape up to this constant.
struct CorollaryFit {
  std::vector<double> epsilons;
  std::vector<double> empirical;  // P[||(1/k) sum f(v_i)|| >= eps]
  double c_fit = 0.0;
  std::uint64_t trials = 0;
};

CorollaryFit corollary_tail_fit(const ExpanderGraph& g, const MatrixFn& f, int k,
                                const std::vector<double>& epsilons, std::uint64_t trials,
                                std::uint64_t rng_seed);

}  // namespace xlab
