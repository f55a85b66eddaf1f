#include "xlab/graph.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "xlab/rng.hpp"

namespace xlab {

void ExpanderGraph::validate() const {
  if (n <= 0 || degree <= 0) throw InvalidInput("graph: n and D must be positive");
  if (static_cast<int>(adj.size()) != n) throw InvalidInput("graph: adjacency size != n");
  std::map<std::pair<int, int>, long> count;
  for (int v = 0; v < n; ++v) {
    if (static_cast<int>(adj[v].size()) != degree)
      throw InvalidInput("graph: vertex degree != D");
    for (int u : adj[v]) {
      if (u < 0 || u >= n) throw InvalidInput("graph: neighbor index out of range");
      ++count[{v, u}];
    }
  }
  for (const auto& [edge, c] : count) {
    const auto it = count.find({edge.second, edge.first});
    if (it == count.end() || it->second != c)
      throw InvalidInput("graph: multigraph is not symmetric");
  }
}

RealMatrix ExpanderGraph::transition_matrix() const {
  RealMatrix p = RealMatrix::Zero(n, n);
  for (int v = 0; v < n; ++v)
    for (int u : adj[v]) p(v, u) += 1.0 / degree;
  return p;
}

ExpanderGraph build_complete_loops(int n) {
  if (n < 1) throw InvalidInput("build_complete_loops: need n >= 1");
  ExpanderGraph g;
  g.n = n;
  g.degree = n;
  g.adj.assign(n, {});
  for (int v = 0; v < n; ++v) {
    g.adj[v].resize(n);
    for (int u = 0; u < n; ++u) g.adj[v][u] = u;
  }
  g.lambda_cache = 0.0;  // P = J/n has spectrum {1, 0, ...}
  return g;
}

ExpanderGraph build_cycle(int n) {
  if (n < 3) throw InvalidInput("build_cycle: need n >= 3");
  ExpanderGraph g;
  g.n = n;
  g.degree = 2;
  g.adj.assign(n, {});
  for (int v = 0; v < n; ++v) {
    int a = (v + n - 1) % n;
    int b = (v + 1) % n;
    if (a > b) std::swap(a, b);
    g.adj[v] = {a, b};
  }
  return g;
}

ExpanderGraph build_margulis(int m) {
  if (m < 2) throw InvalidInput("build_margulis: need m >= 2");
  ExpanderGraph g;
  g.n = m * m;
  g.degree = 8;
  g.adj.assign(g.n, {});
  const auto idx = [m](long x, long y) {
    return static_cast<int>(((x % m + m) % m) * m + ((y % m + m) % m));
  };
  for (long x = 0; x < m; ++x) {
    for (long y = 0; y < m; ++y) {
      g.adj[idx(x, y)] = {idx(x + y, y),     idx(x - y, y),     idx(x + y + 1, y),
                          idx(x - y - 1, y), idx(x, y + x),     idx(x, y - x),
                          idx(x, y + x + 1), idx(x, y - x - 1)};
    }
  }
  return g;
}

namespace {

double lambda_by_dense_eig(const ExpanderGraph& g) {
  // Deflate the top eigenvector: P - J/n agrees with P on the mean-zero
  // subspace and sends the all-ones vector to zero.
  RealMatrix p = g.transition_matrix();
  p.array() -= 1.0 / g.n;
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(p, Eigen::EigenvaluesOnly);
  const RealVector& ev = solver.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double lambda_by_power_iteration(const ExpanderGraph& g) {
  const int n = g.n;
  RealVector x(n);
  SplitMix64 rng(0x9E3779B97F4A7C15ULL);
  for (int i = 0; i < n; ++i) x(i) = rng.gaussian();
  x.array() -= x.mean();
  x.normalize();
  const auto apply_p = [&g, n](const RealVector& v) {
    RealVector out(n);
    for (int w = 0; w < n; ++w) {
      double acc = 0.0;
      for (int u : g.adj[w]) acc += v(u);
      out(w) = acc / g.degree;
    }
    return out;
  };
  double prev = 0.0;
  // Iterate P^2 so negative extreme eigenvalues are found as well.
  for (int iter = 0; iter < 200000; ++iter) {
    RealVector z = apply_p(apply_p(x));
    z.array() -= z.mean();  // keep roundoff out of the all-ones direction
    const double norm = z.norm();
    if (norm < 1e-300) return 0.0;
    const double lam = std::sqrt(norm);
    x = z / norm;
    if (iter > 4 && std::abs(lam - prev) <= 1e-10 * std::max(1e-12, lam)) return lam;
    prev = lam;
  }
  return prev;
}

}  // namespace

double second_eigenvalue(const ExpanderGraph& g) {
  if (g.lambda_cache) return *g.lambda_cache;
  g.validate();
  const double lam = g.n <= 2048 ? lambda_by_dense_eig(g) : lambda_by_power_iteration(g);
  g.lambda_cache = std::min(1.0, std::max(0.0, lam));
  return *g.lambda_cache;
}

ExpanderGraph read_graph(std::istream& in) {
  ExpanderGraph g;
  if (!(in >> g.n >> g.degree)) throw InvalidInput("graph file: missing 'n D' header");
  if (g.n <= 0 || g.degree <= 0) throw InvalidInput("graph file: bad n or D");
  g.adj.assign(g.n, {});
  for (int v = 0; v < g.n; ++v) {
    g.adj[v].resize(g.degree);
    for (int s = 0; s < g.degree; ++s)
      if (!(in >> g.adj[v][s])) throw InvalidInput("graph file: truncated adjacency");
  }
  g.validate();
  return g;
}

void write_graph(std::ostream& out, const ExpanderGraph& g) {
  out << g.n << ' ' << g.degree << '\n';
  for (int v = 0; v < g.n; ++v) {
    for (int s = 0; s < g.degree; ++s) out << g.adj[v][s] << (s + 1 == g.degree ? '\n' : ' ');
  }
}

ExpanderGraph parse_graph_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string family = spec.substr(0, colon);
    int arg = 0;
    try {
      arg = std::stoi(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw InvalidInput("graph spec: bad size in '" + spec + "'");
    }
    if (family == "complete") return build_complete_loops(arg);
    if (family == "cycle") return build_cycle(arg);
    if (family == "margulis") return build_margulis(arg);
    throw InvalidInput("graph spec: unknown family '" + family + "'");
  }
  std::ifstream in(spec);
  if (!in) throw InvalidInput("graph spec: cannot open file '" + spec + "'");
  return read_graph(in);
}

}  // namespace xlab
