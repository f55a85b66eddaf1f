#include "xlab/matrix_fn.hpp"

#include <cmath>

#include "xlab/rng.hpp"

namespace xlab {

void MatrixFn::validate() const {
  if (n < 1 || d < 1) throw InvalidInput("MatrixFn: n and d must be positive");
  if (static_cast<int>(table.size()) != n) throw InvalidInput("MatrixFn: table size != n");
  Matrix sum = Matrix::Zero(d, d);
  double frob2 = 0.0;
  double maxs = 0.0;
  for (const auto& m : table) {
    if (m.rows() != d || m.cols() != d) throw InvalidInput("MatrixFn: entry dimension != d");
    HermitianMatrix check(m);  // throws if not Hermitian within tolerance
    sum += m;
    frob2 += m.squaredNorm();
    maxs = std::max(maxs, spectral_norm(m));
  }
  if (max_abs(sum) > 1e-10 * n) throw InvalidInput("MatrixFn: sum over vertices is not zero");
  if (maxs > 1.0 + 1e-10) throw InvalidInput("MatrixFn: max spectral norm exceeds 1");
  if (std::abs(frobenius_total - std::sqrt(frob2)) > 1e-8 * std::max(1.0, frobenius_total))
    throw InvalidInput("MatrixFn: cached F is stale");
  if (std::abs(max_spectral - maxs) > 1e-8) throw InvalidInput("MatrixFn: cached M is stale");
}

namespace {

void refresh_caches(MatrixFn& f) {
  double frob2 = 0.0;
  double maxs = 0.0;
  for (const auto& m : f.table) {
    frob2 += m.squaredNorm();
    maxs = std::max(maxs, spectral_norm(m));
  }
  f.frobenius_total = std::sqrt(frob2);
  f.max_spectral = maxs;
}

}  // namespace

MatrixFn gen_mean_zero_fn(std::uint64_t rng_seed, int n, int d) {
  if (n < 2) throw InvalidInput("gen_mean_zero_fn: need n >= 2");
  if (d < 1) throw InvalidInput("gen_mean_zero_fn: need d >= 1");
  SplitMix64 rng(rng_seed);
  MatrixFn f;
  f.n = n;
  f.d = d;
  f.table.reserve(n);
  for (int v = 0; v < n; ++v) {
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) {
      m(i, i) = rng.gaussian();
      for (int j = i + 1; j < d; ++j) {
        m(i, j) = Complex(rng.gaussian(), rng.gaussian()) / std::sqrt(2.0);
        m(j, i) = std::conj(m(i, j));
      }
    }
    f.table.push_back(std::move(m));
  }
  Matrix mean = Matrix::Zero(d, d);
  for (const auto& m : f.table) mean += m;
  mean /= n;
  for (auto& m : f.table) m -= mean;
  // re-center the last entry so the vertex sum is exactly zero (and the
  // two-point case exactly antisymmetric)
  Matrix rest = Matrix::Zero(d, d);
  for (int v = 0; v + 1 < n; ++v) rest += f.table[v];
  f.table[n - 1] = -rest;
  double maxs = 0.0;
  for (const auto& m : f.table) maxs = std::max(maxs, spectral_norm(m));
  if (maxs < 1e-300) throw NumericalError("gen_mean_zero_fn: degenerate draw");
  for (auto& m : f.table) m /= maxs;
  refresh_caches(f);
  return f;
}

MatrixFn negated(const MatrixFn& f) {
  MatrixFn out = f;
  for (auto& m : out.table) m = -m;
  return out;
}

HermitianMatrix empirical_mean(const MatrixFn& f, const Walk& w) {
  if (w.vertices.empty()) throw InvalidInput("empirical_mean: empty walk");
  Matrix sum = Matrix::Zero(f.d, f.d);
  for (int v : w.vertices) {
    if (v < 0 || v >= f.n) throw InvalidInput("empirical_mean: walk vertex out of range");
    sum += f.table[v];
  }
  return HermitianMatrix(sum / static_cast<double>(w.length()));
}

}  // namespace xlab
