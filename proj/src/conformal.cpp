#include "xlab/conformal.hpp"

#include <cmath>

namespace xlab {

std::complex<double> conformal_h(std::complex<double> z) {
  if (std::abs(z) > 1.0 + 1e-12) throw DomainError("conformal_h: |z| > 1");
  if (std::abs(z - 1.0) < 1e-14) throw DomainError("conformal_h: pole at z = 1");
  const std::complex<double> w = (1.0 + z) / (1.0 - z);
  // -w + sqrt(w^2 + 1) with the root aligned to w: since
  // (s - w)(s + w) = 1, this is the candidate of modulus <= 1, written as
  // 1/(w + s) to avoid cancellation near the pole. The principal branch
  // alone picks the wrong root on part of the disk.
  std::complex<double> s = std::sqrt(w * w + 1.0);
  // Flip only on decisive misalignment: on the circular arc the two roots
  // tie in modulus and the unflipped choice is the one with Re(h) >= 0.
  const double align = w.real() * s.real() + w.imag() * s.imag();
  if (align < -1e-13 * (1.0 + std::abs(w) * std::abs(s))) s = -s;
  return 1.0 / (w + s);
}

std::complex<double> conformal_f_inv(std::complex<double> w) {
  const std::complex<double> den = w * w - 2.0 * w - 1.0;
  if (std::abs(den) < 1e-300) throw DomainError("conformal_f_inv: denominator vanishes");
  return (w * w + 2.0 * w - 1.0) / den;
}

double poisson_kernel(double rho, double phi) {
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("poisson_kernel: rho must be in [0,1)");
  const double c = std::cos(phi);
  return (1.0 - rho * rho) / (1.0 - 2.0 * rho * c + rho * rho);
}

bool kernel_bound_check(double rho, double phi) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidInput("kernel_bound_check: rho must be in [0,1]");
  const double c = std::cos(phi);
  if (c > 1e-12) throw InvalidInput("kernel_bound_check: cos(phi) must be in [-1,0]");
  // The denominator is >= 1 on this domain, so the formula is safe at rho = 1.
  const double kernel = (1.0 - rho * rho) / (1.0 - 2.0 * rho * c + rho * rho);
  const double base = (1.0 - rho) / (1.0 - c);
  const double s = (1.0 - rho) * (1.0 - rho);
  return base - s <= kernel && kernel <= base + 2.0 * s;
}

}  // namespace xlab
