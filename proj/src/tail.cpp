#include "xlab/tail.hpp"

#include <algorithm>
#include <cmath>

#include "xlab/rng.hpp"
#include "xlab/threads.hpp"

namespace xlab {

double bound_main(int d, double lambda, int k, double epsilon, BoundVariant variant) {
  if (d < 1) throw InvalidInput("bound_main: need d >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidInput("bound_main: lambda must be in [0,1]");
  if (k < 1) throw InvalidInput("bound_main: need k >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InvalidInput("bound_main: epsilon must be in (0,1]");
  const double dim_factor = std::pow(static_cast<double>(d), 2.0 - M_PI / 4.0);
  const double rate = variant == BoundVariant::Chernoff80 ? 80.0 : 72.0;
  return dim_factor * std::exp(-epsilon * epsilon * (1.0 - lambda) * k / rate);
}

double bound_chain_assembled(int d, double lambda, int k, double epsilon) {
  if (d < 1) throw InvalidInput("bound_chain_assembled: need d >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw InvalidInput("bound_chain_assembled: lambda must be in [0,1]");
  if (k < 1) throw InvalidInput("bound_chain_assembled: need k >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw InvalidInput("bound_chain_assembled: epsilon must be in (0,1]");
  const double t = (1.0 - lambda) * epsilon / 36.0;
  const double dim_factor = std::pow(static_cast<double>(d), 2.0 - M_PI / 4.0);
  if (lambda >= 1.0) return dim_factor;  // t = 0, the chain degenerates to the vacuous bound
  const double scale = 4.0 / M_PI;
  const double exponent = scale * scale * 9.0 * k * t * t / (1.0 - lambda) - k * t * epsilon;
  return dim_factor * std::exp(exponent);
}

WilsonInterval wilson95(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw InvalidInput("wilson95: need trials >= 1");
  const double z = 1.959963984540054;
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double z2n = z * z / nt;
  const double center = (p + 0.5 * z2n) / (1.0 + z2n);
  const double half = z * std::sqrt(p * (1.0 - p) / nt + 0.25 * z2n / nt) / (1.0 + z2n);
  // roundoff must not push the interval off the point estimate
  return {std::min(p, std::max(0.0, center - half)), std::max(p, std::min(1.0, center + half))};
}

std::uint64_t walk_count(const ExpanderGraph& g, int k) {
  if (k < 1) throw InvalidInput("walk_count: need k >= 1");
  constexpr std::uint64_t kBudget = 100000000ULL;  // 1e8
  std::uint64_t total = static_cast<std::uint64_t>(g.n);
  for (int i = 1; i < k; ++i) {
    if (total > kBudget / static_cast<std::uint64_t>(g.degree) + 1)
      throw BudgetExceeded("walk enumeration exceeds n * D^(k-1) <= 1e8");
    total *= static_cast<std::uint64_t>(g.degree);
  }
  if (total > kBudget) throw BudgetExceeded("walk enumeration exceeds n * D^(k-1) <= 1e8");
  return total;
}

namespace {

template <int DIM>
double lmax_fixed(const Eigen::Matrix<Complex, DIM, DIM>& a);

template <>
double lmax_fixed<1>(const Eigen::Matrix<Complex, 1, 1>& a) {
  return a(0, 0).real();
}

template <>
double lmax_fixed<2>(const Eigen::Matrix<Complex, 2, 2>& a) {
  const double h = 0.5 * (a(0, 0).real() + a(1, 1).real());
  const double g = 0.5 * (a(0, 0).real() - a(1, 1).real());
  return h + std::sqrt(g * g + std::norm(a(0, 1)));
}

template <>
double lmax_fixed<3>(const Eigen::Matrix<Complex, 3, 3>& a) {
  const double q = (a(0, 0).real() + a(1, 1).real() + a(2, 2).real()) / 3.0;
  Eigen::Matrix<Complex, 3, 3> b = a;
  b(0, 0) -= q;
  b(1, 1) -= q;
  b(2, 2) -= q;
  const double p2 = b.array().abs2().sum() / 6.0;
  const double p = std::sqrt(p2);
  if (p < 1e-300) return q;
  const Complex det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                      b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                      b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
  const double r = std::clamp(det.real() / (2.0 * p * p * p), -1.0, 1.0);
  return q + 2.0 * p * std::cos(std::acos(r) / 3.0);
}

// Depth-first over adjacency slots from a fixed start vertex, accumulating
// how many full-length walks push lambda_max(sum) past each threshold.
template <int DIM>
class Enumerator {
 public:
  using Mat = Eigen::Matrix<Complex, DIM, DIM>;

  Enumerator(const ExpanderGraph& g, const MatrixFn& f, int k, const std::vector<double>& thr)
      : g_(g), k_(k), thresholds_(thr), counts_(thr.size(), 0) {
    fv_.reserve(f.n);
    for (const auto& m : f.table) fv_.push_back(Mat(m));
  }

  void run_from(int v0) { descend(v0, 1, Mat::Zero()); }

  const std::vector<std::uint64_t>& counts() const { return counts_; }

 private:
  void descend(int v, int depth, const Mat& acc) {
    const Mat sum = acc + fv_[v];
    if (depth == k_) {
      const double lm = lmax_fixed<DIM>(sum);
      for (std::size_t i = 0; i < thresholds_.size(); ++i)
        if (lm >= thresholds_[i]) ++counts_[i];
      return;
    }
    for (int u : g_.adj[v]) descend(u, depth + 1, sum);
  }

  const ExpanderGraph& g_;
  int k_;
  const std::vector<double>& thresholds_;
  std::vector<std::uint64_t> counts_;
  std::vector<Mat> fv_;
};

// Dynamic-dimension fallback for d > 3.
class EnumeratorDyn {
 public:
  EnumeratorDyn(const ExpanderGraph& g, const MatrixFn& f, int k, const std::vector<double>& thr)
      : g_(g), f_(f), k_(k), thresholds_(thr), counts_(thr.size(), 0) {}

  void run_from(int v0) { descend(v0, 1, Matrix::Zero(f_.d, f_.d)); }

  const std::vector<std::uint64_t>& counts() const { return counts_; }

 private:
  void descend(int v, int depth, const Matrix& acc) {
    const Matrix sum = acc + f_.table[v];
    if (depth == k_) {
      const double lm = lambda_max_hermitian(sum);
      for (std::size_t i = 0; i < thresholds_.size(); ++i)
        if (lm >= thresholds_[i]) ++counts_[i];
      return;
    }
    for (int u : g_.adj[v]) descend(u, depth + 1, sum);
  }

  const ExpanderGraph& g_;
  const MatrixFn& f_;
  int k_;
  const std::vector<double>& thresholds_;
  std::vector<std::uint64_t> counts_;
};

template <typename Enum>
std::vector<std::uint64_t> enumerate_counts(const ExpanderGraph& g, const MatrixFn& f, int k,
                                            const std::vector<double>& thresholds) {
  std::vector<std::vector<std::uint64_t>> partial(g.n);
  parallel_chunks(g.n, [&](int, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t v0 = lo; v0 < hi; ++v0) {
      Enum e(g, f, k, thresholds);
      e.run_from(static_cast<int>(v0));
      partial[v0] = e.counts();
    }
  });
  std::vector<std::uint64_t> total(thresholds.size(), 0);
  for (const auto& row : partial)
    for (std::size_t i = 0; i < row.size(); ++i) total[i] += row[i];
  return total;
}

double report_bound(int d, double lambda, int k, double epsilon) {
  return bound_main(d, lambda, k, std::min(epsilon, 1.0));
}

}  // namespace

TailReport tail_mc(const ExpanderGraph& g, const MatrixFn& f, int k, double epsilon,
                   std::uint64_t trials, std::uint64_t rng_seed, bool lower_tail) {
  if (trials < 100) throw InvalidInput("tail_mc: need trials >= 100");
  if (k < 1) throw InvalidInput("tail_mc: need k >= 1");
  if (!(epsilon > 0.0)) throw InvalidInput("tail_mc: need epsilon > 0");
  f.validate();
  if (f.n != g.n) throw InvalidInput("tail_mc: function and graph vertex counts differ");
  const MatrixFn flipped = lower_tail ? negated(f) : MatrixFn{};
  const MatrixFn& use = lower_tail ? flipped : f;
  const double threshold = static_cast<double>(k) * epsilon;

  std::vector<std::uint64_t> hits(worker_count(), 0);
  parallel_chunks(trials, [&](int chunk, std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t local = 0;
    Matrix sum(use.d, use.d);
    for (std::uint64_t i = lo; i < hi; ++i) {
      SplitMix64 rng(derived_seed(rng_seed, i));
      int v = static_cast<int>(rng.below(g.n));
      sum = use.table[v];
      for (int step = 1; step < k; ++step) {
        v = g.adj[v][rng.below(g.degree)];
        sum += use.table[v];
      }
      if (lambda_max_hermitian(sum) >= threshold) ++local;
    }
    hits[chunk] = local;
  });
  std::uint64_t exceed = 0;
  for (std::uint64_t h : hits) exceed += h;

  TailReport r;
  r.n = g.n;
  r.d = f.d;
  r.k = k;
  r.epsilon = epsilon;
  r.lambda = second_eigenvalue(g);
  r.trials = trials;
  r.p_hat = static_cast<double>(exceed) / static_cast<double>(trials);
  const WilsonInterval ci = wilson95(exceed, trials);
  r.ci_low = ci.low;
  r.ci_high = ci.high;
  r.bound = report_bound(f.d, r.lambda, k, epsilon);
  r.satisfied = r.ci_low <= r.bound;
  return r;
}

std::vector<TailReport> tail_exact_multi(const ExpanderGraph& g, const MatrixFn& f, int k,
                                         const std::vector<double>& epsilons, bool lower_tail) {
  if (k < 1) throw InvalidInput("tail_exact: need k >= 1");
  if (epsilons.empty()) throw InvalidInput("tail_exact: need at least one epsilon");
  for (double e : epsilons)
    if (!(e > 0.0)) throw InvalidInput("tail_exact: need epsilon > 0");
  f.validate();
  if (f.n != g.n) throw InvalidInput("tail_exact: function and graph vertex counts differ");
  const std::uint64_t total = walk_count(g, k);

  const MatrixFn flipped = lower_tail ? negated(f) : MatrixFn{};
  const MatrixFn& use = lower_tail ? flipped : f;
  std::vector<double> thresholds;
  thresholds.reserve(epsilons.size());
  for (double e : epsilons) thresholds.push_back(static_cast<double>(k) * e);

  std::vector<std::uint64_t> counts;
  switch (f.d) {
    case 1: counts = enumerate_counts<Enumerator<1>>(g, use, k, thresholds); break;
    case 2: counts = enumerate_counts<Enumerator<2>>(g, use, k, thresholds); break;
    case 3: counts = enumerate_counts<Enumerator<3>>(g, use, k, thresholds); break;
    default: counts = enumerate_counts<EnumeratorDyn>(g, use, k, thresholds); break;
  }

  const double lambda = second_eigenvalue(g);
  std::vector<TailReport> out;
  out.reserve(epsilons.size());
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    TailReport r;
    r.n = g.n;
    r.d = f.d;
    r.k = k;
    r.epsilon = epsilons[i];
    r.lambda = lambda;
    r.trials = 0;
    r.p_hat = static_cast<double>(counts[i]) / static_cast<double>(total);
    r.ci_low = r.p_hat;
    r.ci_high = r.p_hat;
    r.bound = report_bound(f.d, lambda, k, epsilons[i]);
    r.satisfied = r.p_hat <= r.bound;
    out.push_back(r);
  }
  return out;
}

TailReport tail_exact(const ExpanderGraph& g, const MatrixFn& f, int k, double epsilon,
                      bool lower_tail) {
  return tail_exact_multi(g, f, k, {epsilon}, lower_tail).front();
}

}  // namespace xlab
