#include "xlab/martingale.hpp"

#include <cmath>
#include <limits>

#include "xlab/rng.hpp"

namespace xlab {

std::vector<std::vector<Matrix>> p_power_table(const ExpanderGraph& g, const MatrixFn& f,
                                               int depth) {
  if (depth < 1) throw InvalidInput("p_power_table: need depth >= 1");
  f.validate();
  if (f.n != g.n) throw InvalidInput("p_power_table: function and graph vertex counts differ");
  std::vector<std::vector<Matrix>> tables;
  tables.reserve(depth);
  tables.push_back(f.table);
  for (int t = 1; t < depth; ++t) {
    const auto& prev = tables.back();
    std::vector<Matrix> next(g.n, Matrix::Zero(f.d, f.d));
    for (int v = 0; v < g.n; ++v) {
      for (int u : g.adj[v]) next[v] += prev[u];
      next[v] /= static_cast<double>(g.degree);
    }
    tables.push_back(std::move(next));
  }
  return tables;
}

namespace {

int truncation_depth(const ExpanderGraph& g, const MatrixFn& f, double epsilon, int k) {
  const double lambda = second_eigenvalue(g);
  // bipartite graphs land at 1 - O(roundoff)
  if (lambda >= 1.0 - 1e-12) throw NonExpander("decompose: graph has lambda >= 1");
  if (!(epsilon > 0.0 && epsilon < f.frobenius_total))
    throw InvalidInput("decompose: epsilon must be in (0, F)");
  const double raw = 2.0 * std::log(f.frobenius_total / epsilon) / (1.0 - lambda);
  if (raw >= static_cast<double>(k)) return k;
  return std::max(1, static_cast<int>(std::ceil(raw)));
}

}  // namespace

MartingaleDecomp decompose(const ExpanderGraph& g, const MatrixFn& f, const Walk& walk,
                           double epsilon) {
  const int k = walk.length();
  if (k < 1) throw InvalidInput("decompose: empty walk");
  const int T = truncation_depth(g, f, epsilon, k);
  // tables up to power T inclusive: index t holds P^t f
  const auto tables = p_power_table(g, f, T + 1);

  MartingaleDecomp out;
  out.truncation = T;
  out.epsilon_target = epsilon;
  out.z.reserve(k);
  for (int i = 1; i <= k; ++i) {
    const int terms = std::min(k + 1 - i, T);
    Matrix zi = Matrix::Zero(f.d, f.d);
    for (int t = 1; t <= terms; ++t) {
      zi += tables[t - 1][walk.vertices[i - 1]];
      if (i >= 2) zi -= tables[t][walk.vertices[i - 2]];
    }
    out.z.push_back(std::move(zi));
  }
  out.remainder = Matrix::Zero(f.d, f.d);
  for (int i = 1; i <= k - T; ++i) out.remainder += tables[T][walk.vertices[i - 1]];
  out.remainder /= static_cast<double>(k);
  return out;
}

MartingalePropertyReport verify_martingale_property(const ExpanderGraph& g, const MatrixFn& f,
                                                    double epsilon, int k, int samples,
                                                    std::uint64_t rng_seed) {
  if (k < 1) throw InvalidInput("verify_martingale_property: need k >= 1");
  const int T = truncation_depth(g, f, epsilon, k);
  const auto tables = p_power_table(g, f, T + 1);

  MartingalePropertyReport report;
  report.truncation = T;

  // Z_i for i >= 2 depends only on (v_{i-1}, v_i) and the truncation depth
  // min(k+1-i, T), so the exact conditional mean is checked once per
  // distinct depth and conditioning vertex u:
  //   E[Z | u] = (1/D) sum_slots sum_t [P^(t-1) f(w_slot) - P^t f(u)].
  // The slot sum is taken directly from the adjacency list rather than
  // through the precomputed tables so the two routes are independent.
  for (int depth = 1; depth <= std::min(T, k - 1); ++depth) {
    for (int u = 0; u < g.n; ++u) {
      Matrix acc = Matrix::Zero(f.d, f.d);
      for (int w : g.adj[u]) {
        Matrix z_uw = Matrix::Zero(f.d, f.d);
        for (int t = 1; t <= depth; ++t) z_uw += tables[t - 1][w] - tables[t][u];
        acc += z_uw;
      }
      acc /= static_cast<double>(g.degree);
      report.max_conditional_mean = std::max(report.max_conditional_mean, max_abs(acc));
    }
  }
  // i = 1: stationary mean of Z_1 over the uniform start vertex.
  {
    const int terms = std::min(k, T);
    Matrix acc = Matrix::Zero(f.d, f.d);
    for (int v = 0; v < g.n; ++v)
      for (int t = 1; t <= terms; ++t) acc += tables[t - 1][v];
    acc /= static_cast<double>(g.n);
    report.max_conditional_mean = std::max(report.max_conditional_mean, max_abs(acc));
  }

  for (int s = 0; s < samples; ++s) {
    const Walk w = random_walk(g, derived_seed(rng_seed, s), k);
    const MartingaleDecomp d = decompose(g, f, w, epsilon);
    Matrix lhs = Matrix::Zero(f.d, f.d);
    for (int v : w.vertices) lhs += f.table[v];
    lhs /= static_cast<double>(k);
    Matrix rhs = d.remainder;
    for (const auto& z : d.z) rhs += z / static_cast<double>(k);
    report.max_reconstruction_residual =
        std::max(report.max_reconstruction_residual, max_abs(Matrix(lhs - rhs)));
    ++report.walks_checked;
  }

  report.ok = report.max_conditional_mean <= 1e-10 &&
              report.max_reconstruction_residual <= 1e-12;
  return report;
}

BoundsReport verify_bounds(const MartingaleDecomp& decomp, const ExpanderGraph& g,
                           const MatrixFn& f, const Walk& walk, const std::vector<Norm>& norms) {
  const int k = walk.length();
  const int T = decomp.truncation;
  BoundsReport report;
  report.truncation = T;
  report.norms = norms;
  report.z_norms.assign(norms.size(), std::vector<double>());
  report.max_ratio.assign(norms.size(), 0.0);
  report.max_provable.assign(norms.size(), 0.0);

  std::vector<double> m_star(norms.size(), 0.0);
  for (std::size_t j = 0; j < norms.size(); ++j)
    for (const auto& m : f.table) m_star[j] = std::max(m_star[j], matrix_norm(m, norms[j]));

  for (int i = 1; i <= k; ++i) {
    const int terms = std::min(k + 1 - i, T);
    for (std::size_t j = 0; j < norms.size(); ++j) {
      const double zn = matrix_norm(decomp.z[i - 1], norms[j]);
      report.z_norms[j].push_back(zn);
      report.max_ratio[j] = std::max(report.max_ratio[j], zn / (T * m_star[j]));
      report.max_provable[j] = std::max(report.max_provable[j], zn / (2.0 * terms * m_star[j]));
    }
  }

  report.w_norm = decomp.remainder.norm();
  const double lambda = second_eigenvalue(g);
  report.w_chain_value = std::pow(lambda, T / 2.0) * f.frobenius_total;

  Matrix lhs = Matrix::Zero(f.d, f.d);
  for (int v : walk.vertices) lhs += f.table[v];
  lhs /= static_cast<double>(k);
  Matrix rhs = decomp.remainder;
  for (const auto& z : decomp.z) rhs += z / static_cast<double>(k);
  report.reconstruction_residual = max_abs(Matrix(lhs - rhs));

  report.ok = report.w_norm <= decomp.epsilon_target + 1e-9 &&
              report.reconstruction_residual <= 1e-12;
  for (std::size_t j = 0; j < norms.size() && report.ok; ++j)
    if (report.max_ratio[j] > 1.0 + 1e-9 / std::max(1e-300, T * m_star[j])) report.ok = false;
  return report;
}

CorollaryFit corollary_tail_fit(const ExpanderGraph& g, const MatrixFn& f, int k,
                                const std::vector<double>& epsilons, std::uint64_t trials,
                                std::uint64_t rng_seed) {
  if (trials < 100) throw InvalidInput("corollary_tail_fit: need trials >= 100");
  f.validate();
  const double lambda = second_eigenvalue(g);
  if (lambda >= 1.0 - 1e-12) throw NonExpander("corollary_tail_fit: graph has lambda >= 1");
  CorollaryFit fit;
  fit.epsilons = epsilons;
  fit.trials = trials;
  std::vector<std::uint64_t> hits(epsilons.size(), 0);
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Walk w = random_walk(g, derived_seed(rng_seed, i), k);
    Matrix sum = Matrix::Zero(f.d, f.d);
    for (int v : w.vertices) sum += f.table[v];
    const double norm = spectral_norm(sum) / k;
    for (std::size_t e = 0; e < epsilons.size(); ++e)
      if (norm >= epsilons[e]) ++hits[e];
  }
  const double log2nd = std::pow(std::log(static_cast<double>(f.n) * f.d), 2.0);
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    const double p = static_cast<double>(hits[e]) / static_cast<double>(trials);
    fit.empirical.push_back(p);
    if (p <= 0.0) continue;  // an unbounded constant fits a zero tail
    const double exponent_scale =
        k * epsilons[e] * epsilons[e] * (1.0 - lambda) * (1.0 - lambda) / log2nd;
    c = std::min(c, std::log(2.0 * f.d / p) / exponent_scale);
  }
  fit.c_fit = c;
  return fit;
}

ShrinkReport verify_shrink(const ExpanderGraph& g, const MatrixFn& f) {
  f.validate();
  if (f.n != g.n) throw InvalidInput("verify_shrink: function and graph vertex counts differ");
  const auto tables = p_power_table(g, f, 2);
  double lhs = 0.0;
  double base = 0.0;
  for (int v = 0; v < g.n; ++v) {
    lhs += tables[1][v].squaredNorm();
    base += tables[0][v].squaredNorm();
  }
  ShrinkReport r;
  r.lambda = second_eigenvalue(g);
  r.lhs = lhs;
  r.rhs_lambda = r.lambda * base;
  r.ratio = base > 0 ? lhs / base : 0.0;
  r.holds_lambda = lhs <= r.rhs_lambda + 1e-9 * std::max(1.0, base);
  r.holds_lambda_sq = lhs <= r.lambda * r.lambda * base + 1e-9 * std::max(1.0, base);
  return r;
}

}  // namespace xlab
