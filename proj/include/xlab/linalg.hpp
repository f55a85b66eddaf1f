#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "xlab/errors.hpp"

namespace xlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  return a.allFinite();
}

// Largest-entry modulus; the scale used by the Hermitian tolerance below.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.rows() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermitian_deviation(const Matrix& a);

// A dense d x d complex matrix carrying A = A* as invariant. Inputs within
// 1e-12 * max(1, |A|_max) of Hermitian are symmetrized as (A + A*)/2;
// anything further off is rejected.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& a);
  static HermitianMatrix zero(Eigen::Index d) { return HermitianMatrix(Matrix::Zero(d, d)); }

  const Matrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

struct EigenDecomp {
  Matrix q;            // unitary, columns are eigenvectors
  RealVector lambdas;  // ascending
};

EigenDecomp hermitian_eig(const HermitianMatrix& a);

// Q diag(exp(z*lambda)) Q*. Hermitian positive definite for real z; for any
// z the adjoint equals the exponential at conj(z).
Matrix matrix_exp_z(const HermitianMatrix& a, Complex z);
Matrix matrix_exp_z(const EigenDecomp& d, Complex z);

// Spectral logarithm; requires all eigenvalues > 0.
Matrix matrix_log(const HermitianMatrix& a);

// (sum_i s_i^p)^(1/p) over singular values; p = infinity gives the spectral
// norm. Evaluated as s1 * (sum (s_i/s1)^p)^(1/p) so large p cannot overflow.
double schatten_norm(const Matrix& a, double p);
double spectral_norm(const Matrix& a);

enum class Norm { Spectral, Schatten1, Schatten2, EntrywiseMax };
double matrix_norm(const Matrix& a, Norm which);
std::string norm_name(Norm which);

// Largest eigenvalue of a Hermitian matrix; closed forms for d <= 3 (hot
// path of the exact tail enumeration), solver otherwise.
double lambda_max_hermitian(const Matrix& a);
double lambda_min_hermitian(const Matrix& a);

// Kronecker product, ((i,k),(j,l)) entry = A(i,j) B(k,l).
template <typename DA, typename DB>
Matrix kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Row-major vectorization: vec(X)(i*d + j) = X(i,j), so that
// vec(AXB) = (A (x) B^T) vec(X).
Vector vec_embed(const Matrix& x);

// tr[A B^T] = <vec(I), (A (x) B) vec(I)>.
Complex inner_vec_identity(const Matrix& a, const Matrix& b);

// [[0, M], [M*, 0]]; Hermitian with spectral norm equal to s1(M).
HermitianMatrix dilate(const Matrix& m);

}  // namespace xlab
