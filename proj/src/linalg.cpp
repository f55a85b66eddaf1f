#include "xlab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace xlab {

double hermitian_deviation(const Matrix& a) {
  return max_abs(Matrix(a - a.adjoint()));
}

HermitianMatrix::HermitianMatrix(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("HermitianMatrix: input not square");
  if (!all_finite(a)) throw InvalidInput("HermitianMatrix: non-finite entries");
  const double tol = 1e-12 * std::max(1.0, max_abs(a));
  if (hermitian_deviation(a) > tol)
    throw InvalidInput("HermitianMatrix: deviation from A = A* exceeds tolerance");
  m_ = 0.5 * (a + a.adjoint());
}

EigenDecomp hermitian_eig(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat());
  if (solver.info() != Eigen::Success)
    throw NumericalError("hermitian_eig: eigensolver did not converge");
  return EigenDecomp{solver.eigenvectors(), solver.eigenvalues()};
}

Matrix matrix_exp_z(const EigenDecomp& d, Complex z) {
  Vector e(d.lambdas.size());
  for (Eigen::Index i = 0; i < d.lambdas.size(); ++i) e(i) = std::exp(z * d.lambdas(i));
  return d.q * e.asDiagonal() * d.q.adjoint();
}

Matrix matrix_exp_z(const HermitianMatrix& a, Complex z) {
  return matrix_exp_z(hermitian_eig(a), z);
}

Matrix matrix_log(const HermitianMatrix& a) {
  const EigenDecomp d = hermitian_eig(a);
  if (d.lambdas.size() > 0 && d.lambdas(0) <= 0.0)
    throw DomainError("matrix_log: matrix not positive definite");
  Vector e(d.lambdas.size());
  for (Eigen::Index i = 0; i < d.lambdas.size(); ++i) e(i) = std::log(d.lambdas(i));
  return d.q * e.asDiagonal() * d.q.adjoint();
}

double schatten_norm(const Matrix& a, double p) {
  if (std::isnan(p) || p < 1.0) throw InvalidInput("schatten_norm: p must be >= 1 or infinity");
  Eigen::JacobiSVD<Matrix> svd(a);
  const RealVector& s = svd.singularValues();
  if (s.size() == 0) return 0.0;
  const double s1 = s(0);
  if (std::isinf(p) || s1 == 0.0) return s1;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i) / s1, p);
  return s1 * std::pow(acc, 1.0 / p);
}

double spectral_norm(const Matrix& a) {
  return schatten_norm(a, std::numeric_limits<double>::infinity());
}

double matrix_norm(const Matrix& a, Norm which) {
  switch (which) {
    case Norm::Spectral: return spectral_norm(a);
    case Norm::Schatten1: return schatten_norm(a, 1.0);
    case Norm::Schatten2: return a.norm();
    case Norm::EntrywiseMax: return max_abs(a);
  }
  throw InvalidInput("matrix_norm: unknown selector");
}

std::string norm_name(Norm which) {
  switch (which) {
    case Norm::Spectral: return "spectral";
    case Norm::Schatten1: return "schatten1";
    case Norm::Schatten2: return "schatten2";
    case Norm::EntrywiseMax: return "max";
  }
  return "?";
}

namespace {

double lmax2(const Matrix& a) {
  const double h = 0.5 * (a(0, 0).real() + a(1, 1).real());
  const double g = 0.5 * (a(0, 0).real() - a(1, 1).real());
  return h + std::sqrt(g * g + std::norm(a(0, 1)));
}

// Trigonometric solution of the characteristic cubic for 3x3 Hermitian
// matrices, evaluated on the trace-shifted matrix for stability.
void eig3_bounds(const Matrix& a, double& lo, double& hi) {
  const double q = (a(0, 0).real() + a(1, 1).real() + a(2, 2).real()) / 3.0;
  Matrix b = a;
  b(0, 0) -= q;
  b(1, 1) -= q;
  b(2, 2) -= q;
  const double p2 = (b.array().abs2().sum()) / 6.0;
  const double p = std::sqrt(p2);
  if (p < 1e-300) {
    lo = hi = q;
    return;
  }
  const Complex det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                      b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                      b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
  double r = det.real() / (2.0 * p * p * p);
  r = std::clamp(r, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  hi = q + 2.0 * p * std::cos(phi);
  lo = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
}

}  // namespace

double lambda_max_hermitian(const Matrix& a) {
  switch (a.rows()) {
    case 0: throw InvalidInput("lambda_max_hermitian: empty matrix");
    case 1: return a(0, 0).real();
    case 2: return lmax2(a);
    case 3: {
      double lo, hi;
      eig3_bounds(a, lo, hi);
      return hi;
    }
    default: {
      Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
      return solver.eigenvalues().maxCoeff();
    }
  }
}

double lambda_min_hermitian(const Matrix& a) {
  return -lambda_max_hermitian(Matrix(-a));
}

Vector vec_embed(const Matrix& x) {
  if (x.rows() != x.cols()) throw InvalidInput("vec_embed: input not square");
  const Eigen::Index d = x.rows();
  Vector v(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = x(i, j);
  return v;
}

Complex inner_vec_identity(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw InvalidInput("inner_vec_identity: dimension mismatch");
  return (a * b.transpose()).trace();
}

HermitianMatrix dilate(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("dilate: input not square");
  const Eigen::Index d = m.rows();
  Matrix out = Matrix::Zero(2 * d, 2 * d);
  out.block(0, d, d, d) = m;
  out.block(d, 0, d, d) = m.adjoint();
  return HermitianMatrix(out);
}

}  // namespace xlab
