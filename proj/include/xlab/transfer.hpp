#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xlab/graph.hpp"
#include "xlab/matrix_fn.hpp"

namespace xlab {

// Tensorized transfer operator E * P~ acting on C^(n d^2), P~ = P (x) I.
// Block v of E is M_v = exp(t f(v)(gamma+ib)/2) (x) conj(exp(t f(v)(gamma+ib)/2)),
// i.e. exp(t H_v) with H_v = (gamma+ib)/2 f(v) (x) I + I (x) (gamma-ib)/2 f(v)^T.
// The conjugate on the second factor is what makes
//   <z0, (E P~)^k z0> = E[ tr( prod exp(t f(v_j)(gamma+ib)/2)
//                             prod_rev exp(t f(v_j)(gamma-ib)/2) ) ]
// hold for complex Hermitian f; for real symmetric f both factors coincide.
struct TransferOperator {
  const ExpanderGraph* graph = nullptr;
  const MatrixFn* fn = nullptr;
  double t = 0.0;
  double gamma = 0.0;
  double b = 0.0;
  double ell = 0.0;                   // sqrt(gamma^2 + b^2), the ||H_v|| majorant
  std::vector<double> h_norms;        // exact spectral norms of each H_v
  std::vector<Matrix> blocks;         // M_v, each d^2 x d^2

  int dim() const { return fn->n * fn->d * fn->d; }
};

TransferOperator build_transfer(const ExpanderGraph& g, const MatrixFn& f, double t, double gamma,
                                double b);

// Decomposition of z in C^(n d^2) into its component in span{1 (x) e_i}
// (the top eigenspace of P~) and the orthogonal rest.
struct SplitVector {
  Vector full;
  Vector par;
  Vector perp;
};

SplitVector split(const Vector& z, int n, int d);

// z0 = (1/sqrt n) 1 (x) vec(I_d); applies z -> E(P~ z) k times and returns
// <z0, z_k>, which is real and nonnegative. The application is matrix-free:
// P~ averages d^2-blocks over graph neighbors, E multiplies block v by M_v.
double quadratic_form_k(const TransferOperator& op, int k);

struct StepTrace {
  std::vector<double> par_norms;   // ||z_i^par||, i = 0..k
  std::vector<double> perp_norms;  // ||z_i^perp||
  double value = 0.0;              // <z0, z_k>
};

StepTrace quadratic_form_trace(const TransferOperator& op, int k);

// alpha_1 = exp(t ell) - t ell, alpha_2 = exp(t ell) - 1,
// alpha_3 = lambda (exp(t ell) - 1), alpha_4 = lambda exp(t gamma).
struct AlphaValues {
  double a1, a2, a3, a4;
};

AlphaValues alpha_values(double t, double ell, double gamma, double lambda);

// Contraction inequalities for E P~ relative to the parallel/orthogonal
// splitting, checked on random vectors plus the structured extremes.
struct HealyReport {
  AlphaValues alphas{0, 0, 0, 0};
  double lambda = 0.0;
  int vectors_checked = 0;
  double max_slack[4] = {-1e300, -1e300, -1e300, -1e300};  // positive = violated
  bool ok = false;
  std::vector<Complex> witness;  // offending vector when !ok
  int violated_part = 0;         // 1..4 when !ok
  double runtime_sec = 0.0;
};

HealyReport check_healy_lemma(const TransferOperator& op, int trials, std::uint64_t rng_seed);

// Exact moment-generating-function bound: <z0,(E P~)^k z0> against
// d exp(k t^2 (gamma^2+b^2) (1 + 8/(1-lambda))), plus the intermediate
// d (alpha_1 + alpha_2 alpha_3 / (1 - alpha_4))^k chain value.
struct MgfReport {
  int k = 0;
  double t = 0.0, gamma = 0.0, b = 0.0;
  double lambda = 0.0;
  double value = 0.0;
  double chain_bound = 0.0;
  double final_bound = 0.0;
  double rel_slack = 0.0;  // (value - final_bound) / final_bound, negative = satisfied
  bool lambda_near_zero = false;
  bool ok = false;
  double runtime_sec = 0.0;
};

MgfReport check_mgf_bound(const ExpanderGraph& g, const MatrixFn& f, int k, double t, double gamma,
                          double b);

}  // namespace xlab
