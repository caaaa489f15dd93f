#pragma once

#include <cstddef>
#include <vector>

#include "kricci/linalg.hpp"

namespace kricci {

/// Raw rank-4 complex array T[i][j][k][l], row-major, no symmetry assumed.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n);
  Tensor4(int n, std::vector<Complex> entries);

  int dim() const { return n_; }
  std::size_t index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }
  Complex& operator()(int i, int j, int k, int l) {
    return data_[index(i, j, k, l)];
  }
  Complex operator()(int i, int j, int k, int l) const {
    return data_[index(i, j, k, l)];
  }
  const std::vector<Complex>& data() const { return data_; }
  std::vector<Complex>& data() { return data_; }

 private:
  int n_ = 0;
  std::vector<Complex> data_;
};

struct SymmetryReport {
  double max_violation = 0.0;
  bool ok = true;
};

/// Largest deviation from S_ijkl = S_kjil and conj(S_ijkl) = S_jilk.
SymmetryReport validate_symmetries(const Tensor4& t, double tol);

/// Symmetric bihermitian form S(X, conj Y, Z, conj W) with
///   S(X,Y,Z,W) = S(Z,Y,X,W)  and  conj S(X,Y,Z,W) = S(Y,X,W,Z).
///
/// Instances are produced only by `symmetrize` (exact projection) or by
/// `from_symmetric` (validated), so the relations hold to rounding.
class BihermitianForm {
 public:
  BihermitianForm() = default;
  /// Zero form.
  explicit BihermitianForm(int n) : t_(n) {}

  /// Wraps `t` after checking the symmetries to `tol` (relative to the
  /// largest entry), then projects so they hold exactly.
  static BihermitianForm from_symmetric(const Tensor4& t, double tol = 1e-12);

  int dim() const { return t_.dim(); }
  Complex operator()(int i, int j, int k, int l) const { return t_(i, j, k, l); }
  const Tensor4& tensor() const { return t_; }
  double max_abs() const;

  /// S(X, conj Y, Z, conj W).
  Complex eval(const Vector& x, const Vector& y, const Vector& z,
               const Vector& w) const;
  /// S(X, conj X, X, conj X); asserted real (NumericError otherwise).
  double quartic(const Vector& x) const;
  /// The Hermitian form Y -> S(X, conj X, Y, conj Y).
  HermitianForm partial(const Vector& x) const;

  /// Components in the basis given by the columns of P.
  BihermitianForm in_frame(const Matrix& p) const;

  BihermitianForm& operator+=(const BihermitianForm& o);
  BihermitianForm& operator-=(const BihermitianForm& o);
  BihermitianForm& operator*=(double c);
  friend BihermitianForm operator+(BihermitianForm a, const BihermitianForm& b) {
    return a += b;
  }
  friend BihermitianForm operator-(BihermitianForm a, const BihermitianForm& b) {
    return a -= b;
  }
  friend BihermitianForm operator*(double c, BihermitianForm a) { return a *= c; }

 private:
  friend BihermitianForm symmetrize(const Tensor4& t);
  explicit BihermitianForm(Tensor4 t) : t_(std::move(t)) {}
  Tensor4 t_;
};

/// Average over the order-8 group generated by the two symmetry relations.
/// Idempotent; the output satisfies both relations exactly.
BihermitianForm symmetrize(const Tensor4& t);

/// B(X,Y,Z,W) = h(X,Y) h(Z,W) + h(X,W) h(Z,Y).
BihermitianForm b_form(const HermitianForm& h);

/// Fully symmetrized product of two Hermitian forms, normalized so that
/// C(X,X,X,X) = a(X,X) b(X,X).
BihermitianForm symmetric_product(const HermitianForm& a, const HermitianForm& b);

/// Symmetrized complex-Gaussian raw tensor.
BihermitianForm random_bihermitian(int n, Rng& rng);
Tensor4 random_tensor(int n, Rng& rng);

/// Reality tolerance used when a quantity is real by symmetry.
inline constexpr double kRealityTol = 1e-10;

}  // namespace kricci
