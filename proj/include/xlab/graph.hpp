#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xlab/linalg.hpp"

namespace xlab {

// D-regular undirected multigraph with ordered adjacency lists. Self-loops
// and parallel edges count once per slot, so regularity is preserved by the
// explicit constructions. Immutable after construction; the eigenvalue cache
// is populated at most once.
struct ExpanderGraph {
  int n = 0;
  int degree = 0;
  std::vector<std::vector<int>> adj;  // adj[v] has exactly `degree` entries
  mutable std::optional<double> lambda_cache;

  // Checks regularity, index ranges, and multiset symmetry (each (u,v) slot
  // is matched by a (v,u) slot).
  void validate() const;

  RealMatrix transition_matrix() const;  // P = A/D, doubly stochastic
};

ExpanderGraph build_complete_loops(int n);  // D = n, lambda = 0
ExpanderGraph build_cycle(int n);           // D = 2, neighbors ascending; n >= 3

// Gabber-Galil variant on Z_m x Z_m, D = 8. Neighbors of (x,y) in this fixed
// order: (x+y,y), (x-y,y), (x+y+1,y), (x-y-1,y), (x,y+x), (x,y-x),
// (x,y+x+1), (x,y-x-1), all mod m.
ExpanderGraph build_margulis(int m);

// max |eigenvalue| of P on the mean-zero subspace: full symmetric
// eigendecomposition for n <= 2048, else power iteration with the all-ones
// direction deflated, relative tolerance 1e-10. Cached on the graph.
double second_eigenvalue(const ExpanderGraph& g);

// Text format: first line "n D", then n lines of D neighbor indices.
ExpanderGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const ExpanderGraph& g);

// "complete:16" | "cycle:64" | "margulis:8" | path to a graph file.
ExpanderGraph parse_graph_spec(const std::string& spec);

}  // namespace xlab
