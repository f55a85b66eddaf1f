#include "xlab/quadrature.hpp"

#include <cmath>

#include "xlab/errors.hpp"

namespace xlab {

// Newton iteration on P_n from the usual cosine initial guesses; nodes are
// symmetric so only the lower half is solved.
QuadRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw InvalidInput("gauss_legendre: need n >= 1");
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double xm = 0.5 * (b + a);
  const double xl = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i] = xm - xl * z;
    rule.nodes[n - 1 - i] = xm + xl * z;
    rule.weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

}  // namespace xlab
