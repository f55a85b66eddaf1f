#pragma once

#include <complex>

#include "xlab/errors.hpp"

namespace xlab {

// Biholomorphic map from the unit disk to the right half-disk:
//   h(z) = -(1+z)/(1-z) + sqrt(((1+z)/(1-z))^2 + 1),
// principal square root. The pole z = 1 raises DomainError.
std::complex<double> conformal_h(std::complex<double> z);

// Inverse map f(w) = (w^2 + 2w - 1)/(w^2 - 2w - 1).
std::complex<double> conformal_f_inv(std::complex<double> w);

// (1 - rho^2) / (1 - 2 rho cos(phi) + rho^2) for 0 <= rho < 1.
double poisson_kernel(double rho, double phi);

// For rho in [0,1] and cos(phi) in [-1,0], checks
//   (1-rho)/(1-cos phi) - (1-rho)^2 <= kernel <= (1-rho)/(1-cos phi) + 2(1-rho)^2.
bool kernel_bound_check(double rho, double phi);

}  // namespace xlab
