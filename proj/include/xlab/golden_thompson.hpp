#pragma once

#include <vector>

#include "xlab/linalg.hpp"

namespace xlab {

// Quadrature discretization of the rotation measure mu on [-pi/2, pi/2]:
// the limit of the half-disk Poisson averaging, i.e. the pushforward of the
// arc density (1/2)/(1 - cos phi) on {pi/2 <= |phi| <= pi} through
// phi -> arg h(e^{i phi}). Weights sum to 1.
struct MuMeasure {
  std::vector<double> nodes;    // angles in [-pi/2, pi/2]
  std::vector<double> weights;  // positive, sum to 1
};

// m Gauss-Legendre nodes per arc (2m total). Requires m >= 4.
MuMeasure build_mu(int m);

struct GTReport {
  double lhs = 0.0;     // log tr exp(sum H_j), nats
  double rhs = 0.0;     // (4/pi) * integral of log of the two-sided trace
  double margin = 0.0;  // rhs - lhs
  int quadrature_nodes = 0;
  double integrand_min = 0.0;  // smallest trace seen across nodes
};

// tr[ prod_{j=1..k} exp((e^{i phi}/2) H_j) * prod_{j=k..1} exp((e^{-i phi}/2) H_j) ].
// Equals tr[G G*] >= 0 for G the first product.
double gt_rhs_integrand(const std::vector<HermitianMatrix>& hs, double phi);

GTReport gt_multi_verify(const std::vector<HermitianMatrix>& hs, int m);

// (2/theta) log || prod exp((theta/2) H_j) ||_{2/theta}; approaches
// log tr exp(sum H_j) as theta -> 0+.
double trotter_power(const std::vector<HermitianMatrix>& hs, double theta);

}  // namespace xlab
