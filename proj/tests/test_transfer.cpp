#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "xlab/transfer.hpp"
#include "xlab/walk.hpp"

using namespace xlab;

namespace {

// Walk expectation of the two-sided trace product, by direct enumeration of
// slot paths with explicit matrix products.
double walk_expectation(const ExpanderGraph& g, const MatrixFn& f, int k, double t, double gamma,
                        double b) {
  std::vector<Matrix> left(f.n), right(f.n);
  for (int v = 0; v < f.n; ++v) {
    left[v] = matrix_exp_z(HermitianMatrix(f.table[v]), 0.5 * t * Complex(gamma, b));
    right[v] = matrix_exp_z(HermitianMatrix(f.table[v]), 0.5 * t * Complex(gamma, -b));
  }
  Complex total = 0.0;
  const auto rec = [&](auto&& self, int v, int depth, const Matrix& g1, const Matrix& g2) -> void {
    const Matrix g1n = g1 * left[v];
    const Matrix g2n = right[v] * g2;
    if (depth == k) {
      total += (g1n * g2n).trace();
      return;
    }
    for (int u : g.adj[v]) self(self, u, depth + 1, g1n, g2n);
  };
  const Matrix id = Matrix::Identity(f.d, f.d);
  for (int v = 0; v < f.n; ++v) rec(rec, v, 1, id, id);
  const double norm = static_cast<double>(g.n) * std::pow(g.degree, k - 1);
  return total.real() / norm;
}

}  // namespace

TEST_CASE("build_transfer block structure") {
  const ExpanderGraph g = build_cycle(5);
  const MatrixFn f = gen_mean_zero_fn(2, 5, 2);
  const TransferOperator op = build_transfer(g, f, 0.3, 0.8, 0.6);
  CHECK(op.ell == doctest::Approx(1.0));
  REQUIRE(op.blocks.size() == 5);
  for (int v = 0; v < 5; ++v) {
    CHECK(op.blocks[v].rows() == 4);
    CHECK(op.h_norms[v] <= op.ell + 1e-10);
    CHECK(spectral_norm(op.blocks[v]) <= std::exp(op.gamma * op.t) + 1e-8);
  }
  CHECK_THROWS_AS(build_transfer(g, f, 0.0, 1.0, 1.0), InvalidInput);
}

TEST_CASE("scalar blocks collapse to exp(t gamma f(v))") {
  const ExpanderGraph g = build_cycle(5);
  const MatrixFn f = gen_mean_zero_fn(8, 5, 1);
  const TransferOperator op = build_transfer(g, f, 0.4, 0.9, 0.7);
  for (int v = 0; v < 5; ++v) {
    CHECK(op.blocks[v](0, 0).real() ==
          doctest::Approx(std::exp(0.4 * 0.9 * f.table[v](0, 0).real())).epsilon(1e-12));
    CHECK(std::abs(op.blocks[v](0, 0).imag()) <= 1e-12);
  }
}

TEST_CASE("blocks reconstruct as exp(t H_v) through the tensor identity") {
  const ExpanderGraph g = build_cycle(5);
  const MatrixFn f = gen_mean_zero_fn(4, 5, 2);
  const double t = 0.25, gamma = 0.7, b = 0.5;
  const TransferOperator op = build_transfer(g, f, t, gamma, b);
  const Matrix id = Matrix::Identity(2, 2);
  for (int v = 0; v < 5; ++v) {
    const Matrix hv = kron(Matrix((Complex(gamma, b) / 2.0) * f.table[v]), id) +
                      kron(id, Matrix((Complex(gamma, -b) / 2.0) * f.table[v].transpose()));
    const Matrix expect = oracle::expm_taylor(hv, t, 60);
    CHECK(max_abs(Matrix(op.blocks[v] - expect)) <= 1e-10);
  }
  // zero block for an identically zero entry
  MatrixFn fz = f;
  fz.table.assign(5, Matrix::Zero(2, 2));
  fz.frobenius_total = 0.0;
  fz.max_spectral = 0.0;
  const TransferOperator opz = build_transfer(g, fz, t, gamma, b);
  CHECK(max_abs(Matrix(opz.blocks[0] - Matrix::Identity(4, 4))) <= 1e-14);
}

TEST_CASE("split decomposition") {
  const int n = 4, d = 2;
  SplitMix64 rng(6);
  Vector z(n * d * d);
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = Complex(rng.gaussian(), rng.gaussian());
  const SplitVector s = split(z, n, d);
  CHECK((s.full - (s.par + s.perp)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(std::abs(s.par.dot(s.perp)) <= 1e-12 * z.norm());
  CHECK(s.full.squaredNorm() ==
        doctest::Approx(s.par.squaredNorm() + s.perp.squaredNorm()).epsilon(1e-12));

  // pure parallel input has no orthogonal part
  Vector w(d * d);
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = Complex(rng.gaussian(), rng.gaussian());
  Vector par(n * d * d);
  for (int v = 0; v < n; ++v) par.segment(v * d * d, d * d) = w;
  CHECK(split(par, n, d).perp.cwiseAbs().maxCoeff() <= 1e-13);

  // blocks summing to zero have no parallel part
  Vector anti = Vector::Zero(n * d * d);
  anti.segment(0, d * d) = w;
  anti.segment(d * d, d * d) = -w;
  CHECK(split(anti, n, d).par.cwiseAbs().maxCoeff() <= 1e-13);

  CHECK_THROWS_AS(split(w, n, d), InvalidInput);
}

TEST_CASE("quadratic_form_k equals d for the zero function") {
  const ExpanderGraph g = build_cycle(5);
  MatrixFn f = gen_mean_zero_fn(4, 5, 2);
  f.table.assign(5, Matrix::Zero(2, 2));
  f.frobenius_total = 0.0;
  f.max_spectral = 0.0;
  const TransferOperator op = build_transfer(g, f, 0.3, 0.8, 0.6);
  for (int k : {1, 3, 7}) CHECK(quadratic_form_k(op, k) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("quadratic_form_k k=1 equals the direct vertex average") {
  const ExpanderGraph g = build_complete_loops(4);
  const MatrixFn f = gen_mean_zero_fn(12, 4, 2);
  const double t = 0.3, gamma = 0.6, b = 0.8;
  const TransferOperator op = build_transfer(g, f, t, gamma, b);
  double direct = 0.0;
  for (int v = 0; v < 4; ++v) {
    const Matrix a = matrix_exp_z(HermitianMatrix(f.table[v]), 0.5 * t * Complex(gamma, b));
    const Matrix c = matrix_exp_z(HermitianMatrix(f.table[v]), 0.5 * t * Complex(gamma, -b));
    direct += (a * c).trace().real();
  }
  direct /= 4.0;
  CHECK(quadratic_form_k(op, 1) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("transfer identity against exhaustive walks, complex f") {
  for (const ExpanderGraph& g : {build_complete_loops(2), build_cycle(5), build_margulis(2)}) {
    for (int d : {1, 2}) {
      const MatrixFn f = gen_mean_zero_fn(19, g.n, d);
      for (const auto& [t, gamma, b] :
           {std::tuple{0.3, 0.8, 0.6}, std::tuple{0.2, 0.0, 1.0}, std::tuple{0.5, 0.4, -0.7}}) {
        const TransferOperator op = build_transfer(g, f, t, gamma, b);
        for (int k : {1, 2, 4}) {
          const double via_operator = quadratic_form_k(op, k);
          const double via_walks = walk_expectation(g, f, k, t, gamma, b);
          CHECK(via_operator ==
                doctest::Approx(via_walks).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("alpha closed forms") {
  const AlphaValues a0 = alpha_values(0.0, 1.0, 1.0, 0.25);
  CHECK(a0.a1 == doctest::Approx(1.0));
  CHECK(a0.a2 == doctest::Approx(0.0));
  CHECK(a0.a3 == doctest::Approx(0.0));
  CHECK(a0.a4 == doctest::Approx(0.25));

  const AlphaValues a1 = alpha_values(1.0, 1.0, 0.0, 0.5);  // t*ell = 1, gamma = 0
  CHECK(a1.a1 == doctest::Approx(std::exp(1.0) - 1.0));
  CHECK(a1.a2 == doctest::Approx(std::exp(1.0) - 1.0));
  CHECK(a1.a3 == doctest::Approx(0.5 * (std::exp(1.0) - 1.0)));
  CHECK(a1.a4 == doctest::Approx(0.5));

  const AlphaValues a2 = alpha_values(0.3, 1.2, 0.9, 0.0);
  CHECK(a2.a3 == 0.0);
  CHECK(a2.a4 == 0.0);
}

TEST_CASE("healy inequalities hold on random vectors") {
  const ExpanderGraph g = build_margulis(4);
  const MatrixFn f = gen_mean_zero_fn(3, 16, 2);
  const TransferOperator op = build_transfer(g, f, 0.1, 1.0, 0.5);
  const HealyReport r = check_healy_lemma(op, 300, 424242);
  CHECK(r.ok);
  for (double s : r.max_slack) CHECK(s <= 1e-9);
}

TEST_CASE("healy parts 3 and 4 vanish on the complete graph") {
  const ExpanderGraph g = build_complete_loops(4);
  const MatrixFn f = gen_mean_zero_fn(3, 4, 2);
  const TransferOperator op = build_transfer(g, f, 0.2, 0.8, 0.4);
  const HealyReport r = check_healy_lemma(op, 100, 1);
  CHECK(r.ok);
  CHECK(r.alphas.a3 == 0.0);
  CHECK(r.alphas.a4 == 0.0);
  // P~ kills orthogonal components outright, so parts 3-4 are equalities at 0
  CHECK(r.max_slack[2] <= 1e-12);
  CHECK(r.max_slack[3] <= 1e-12);
}

TEST_CASE("healy part 1 is an equality at bound 1 for the zero function") {
  // with f = 0 every block is the identity, so E P~ fixes z0 and the part-1
  // inequality is tight with the operator's true alpha_1 = 1
  const ExpanderGraph g = build_cycle(5);
  MatrixFn f = gen_mean_zero_fn(4, 5, 2);
  f.table.assign(5, Matrix::Zero(2, 2));
  f.frobenius_total = 0.0;
  f.max_spectral = 0.0;
  const TransferOperator op = build_transfer(g, f, 0.3, 0.8, 0.6);
  const StepTrace trace = quadratic_form_trace(op, 3);
  for (double pn : trace.par_norms) CHECK(pn == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  for (double on : trace.perp_norms) CHECK(on <= 1e-13);
  const HealyReport r = check_healy_lemma(op, 10, 5);
  CHECK(r.ok);
}

TEST_CASE("per-step recursion bounds from the trace") {
  const ExpanderGraph g = build_margulis(2);
  const MatrixFn f = gen_mean_zero_fn(7, 4, 2);
  const double t = 0.2, gamma = 0.7, b = 0.7;
  const TransferOperator op = build_transfer(g, f, t, gamma, b);
  const double lambda = second_eigenvalue(g);
  const AlphaValues a = alpha_values(t, op.ell, gamma, lambda);
  const StepTrace trace = quadratic_form_trace(op, 8);
  for (std::size_t i = 1; i < trace.par_norms.size(); ++i) {
    CHECK(trace.perp_norms[i] <=
          a.a2 * trace.par_norms[i - 1] + a.a4 * trace.perp_norms[i - 1] + 1e-9);
    CHECK(trace.par_norms[i] <=
          a.a1 * trace.par_norms[i - 1] + a.a3 * trace.perp_norms[i - 1] + 1e-9);
  }
  CHECK(trace.value == doctest::Approx(quadratic_form_k(op, 8)).epsilon(1e-12));
}

TEST_CASE("mgf bound holds exactly on a small grid") {
  const ExpanderGraph g = build_cycle(9);
  const MatrixFn f = gen_mean_zero_fn(5, 9, 2);
  const double lambda = second_eigenvalue(g);
  int points = 0;
  for (double t : {0.05, 0.2}) {
    for (const auto& [gamma, b] : {std::pair{0.0, 1.0}, std::pair{0.28, 0.96}}) {
      if (t * t * (gamma * gamma + b * b) > 1.0) continue;
      if (lambda > 0 && t * gamma > (1.0 - lambda) / (4.0 * lambda)) continue;
      for (int k = 1; k <= 6; ++k) {
        const MgfReport r = check_mgf_bound(g, f, k, t, gamma, b);
        CHECK(r.ok);
        CHECK(r.value <= r.chain_bound * (1 + 1e-8));
        CHECK(r.chain_bound <= r.final_bound * (1 + 1e-8));
        ++points;
      }
    }
  }
  CHECK(points >= 12);
}

TEST_CASE("mgf bound at lambda = 0 is unconstrained in t*gamma") {
  const ExpanderGraph g = build_complete_loops(4);
  const MatrixFn f = gen_mean_zero_fn(9, 4, 2);
  const MgfReport r = check_mgf_bound(g, f, 5, 0.5, 1.0, 0.8);
  CHECK(r.ok);
  CHECK(r.lambda_near_zero);
}

TEST_CASE("mgf preconditions rejected") {
  const ExpanderGraph g = build_cycle(5);
  const MatrixFn f = gen_mean_zero_fn(5, 5, 1);
  CHECK_THROWS_AS(check_mgf_bound(g, f, 3, 2.0, 1.0, 1.0), InvalidInput);  // t^2 ell^2 > 1
  CHECK_THROWS_AS(check_mgf_bound(g, f, 3, 0.5, 1.0, 0.0), InvalidInput);  // b = 0
  const ExpanderGraph bip = build_cycle(4);
  const MatrixFn f4 = gen_mean_zero_fn(5, 4, 1);
  CHECK_THROWS_AS(check_mgf_bound(bip, f4, 3, 0.1, 0.1, 0.5), InvalidInput);  // lambda = 1
}

TEST_CASE("mgf bound holds for both signs of b") {
  const ExpanderGraph g = build_margulis(2);
  const MatrixFn f = gen_mean_zero_fn(77, 4, 2);
  const MgfReport plus = check_mgf_bound(g, f, 4, 0.2, 0.3, 0.9);
  const MgfReport minus = check_mgf_bound(g, f, 4, 0.2, 0.3, -0.9);
  CHECK(plus.ok);
  CHECK(minus.ok);
  CHECK(plus.value == doctest::Approx(minus.value).epsilon(1e-10));
}

TEST_CASE("matrix-free application matches the materialized operator") {
  // small enough to build (E P~)^k densely: n d^2 = 16
  const ExpanderGraph g = build_margulis(2);
  const MatrixFn f = gen_mean_zero_fn(15, 4, 2);
  const double t = 0.3, gamma = 0.6, b = 0.8;
  const TransferOperator op = build_transfer(g, f, t, gamma, b);
  const int dim = op.dim();
  Matrix p_tilde = kron(g.transition_matrix().cast<Complex>(), Matrix(Matrix::Identity(4, 4)));
  Matrix e_blocks = Matrix::Zero(dim, dim);
  for (int v = 0; v < 4; ++v) e_blocks.block(4 * v, 4 * v, 4, 4) = op.blocks[v];
  const Matrix step = e_blocks * p_tilde;
  Vector z0 = Vector::Zero(dim);
  for (int v = 0; v < 4; ++v)
    for (int i = 0; i < 2; ++i) z0(v * 4 + i * 2 + i) = 0.5;  // (1/sqrt 4) 1 (x) vec(I)
  Vector z = z0;
  for (int k = 1; k <= 6; ++k) {
    z = step * z;
    CHECK(quadratic_form_k(op, k) == doctest::Approx(z0.dot(z).real()).epsilon(1e-11));
  }
}

TEST_CASE("a corrupted operator is caught with a serialized witness") {
  const ExpanderGraph g = build_margulis(2);
  const MatrixFn f = gen_mean_zero_fn(3, 4, 2);
  TransferOperator op = build_transfer(g, f, 0.1, 1.0, 0.5);
  op.blocks[1] *= 10.0;  // breaks every part-1/2 contraction constant
  const HealyReport r = check_healy_lemma(op, 50, 8);
  CHECK(!r.ok);
  CHECK(r.violated_part >= 1);
  CHECK(!r.witness.empty());
}
