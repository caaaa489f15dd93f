#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

namespace kricci {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Hermitian form on C^n stored by its values A(e_i, conj e_j).
///
/// Conjugate symmetry is exact: every constructor projects onto the
/// Hermitian part, so entries(j, i) == conj(entries(i, j)) bitwise and the
/// diagonal is real.
class HermitianForm {
 public:
  HermitianForm() = default;
  explicit HermitianForm(int n);

  static HermitianForm identity(int n);
  static HermitianForm scaled_identity(int n, double c);

  /// Takes the Hermitian part of `entries`.  Throws DomainError if the input
  /// deviates from Hermitian by more than `tol` relative to its size.
  static HermitianForm from_entries(const Matrix& entries, double tol = 1e-10);

  /// Hermitian part without a tolerance check.
  static HermitianForm hermitian_part(const Matrix& entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  Complex operator()(int i, int j) const { return entries_(i, j); }
  const Matrix& entries() const { return entries_; }

  /// Operator matrix M with A(X, conj Y) = Y^H M X.  Equals entries^T.
  Matrix op() const { return entries_.transpose(); }

  /// A(X, conj Y) = sum_ij X_i conj(Y_j) A_ij.
  Complex eval(const Vector& x, const Vector& y) const;
  /// A(X, conj X); real by construction.
  double quadratic(const Vector& x) const;

  /// tr_h A = sum_ij A_ij (h^{-1})_ji.  Throws DomainError for singular h.
  double trace_wrt(const HermitianForm& h) const;

  /// Eigenvalues of A relative to the positive definite h, ascending.
  RealVector eigenvalues_wrt(const HermitianForm& h) const;
  double min_eigenvalue() const;
  double max_eigenvalue() const;

  HermitianForm& operator+=(const HermitianForm& o);
  HermitianForm& operator-=(const HermitianForm& o);
  HermitianForm& operator*=(double c);

  friend HermitianForm operator+(HermitianForm a, const HermitianForm& b) {
    return a += b;
  }
  friend HermitianForm operator-(HermitianForm a, const HermitianForm& b) {
    return a -= b;
  }
  friend HermitianForm operator*(double c, HermitianForm a) { return a *= c; }
  friend HermitianForm operator*(HermitianForm a, double c) { return a *= c; }

 private:
  Matrix entries_;
};

/// Columns form an h-unitary basis: h(P_a, conj P_b) = delta_ab.
/// Built from the Cholesky factor of op(h).  Throws DomainError unless h is
/// positive definite.
Matrix unitary_frame(const HermitianForm& h);

/// Frame that is g-unitary and diagonalizes h (the generalized Hermitian
/// eigenproblem of the pair).  tau holds h(E_i, conj E_i), ascending.
struct SimultaneousFrame {
  Matrix frame;
  RealVector tau;
};
SimultaneousFrame simultaneous_frame(const HermitianForm& g,
                                     const HermitianForm& h);

/// Components of A in the basis given by the columns of P:
/// A'_ab = A(P_a, conj P_b).
HermitianForm in_frame(const HermitianForm& a, const Matrix& p);

/// |X|_h^2.
double norm_sq(const Vector& x, const HermitianForm& h);

// Random instance helpers.
Vector random_gaussian_vector(int n, Rng& rng);
Matrix random_gaussian_matrix(int rows, int cols, Rng& rng);
Matrix random_unitary(int n, Rng& rng);
/// A A^H + n I for complex Gaussian A, scaled to unit average eigenvalue.
HermitianForm random_metric(int n, Rng& rng);
HermitianForm random_hermitian(int n, Rng& rng);
/// Uniform on the h-unit sphere.
Vector random_unit_vector(const HermitianForm& h, Rng& rng);

}  // namespace kricci
