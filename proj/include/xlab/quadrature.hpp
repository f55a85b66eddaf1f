#pragma once

#include <vector>

namespace xlab {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b].
QuadRule gauss_legendre(int n, double a, double b);

}  // namespace xlab
