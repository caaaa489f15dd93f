#pragma once

#include "kricci/bihermitian.hpp"
#include "kricci/linalg.hpp"

namespace kricci {

/// Orthonormal basis (w.r.t. a reference metric) of a k-dimensional subspace.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;
  /// Validates h-orthonormality of the columns to `tol`; DomainError if not.
  SubspaceBasis(Matrix columns, HermitianForm metric, double tol = 1e-12);

  /// Gram-Schmidt in the h inner product.  DomainError on rank deficiency.
  static SubspaceBasis orthonormalize(const Matrix& columns,
                                      const HermitianForm& metric);

  int n() const { return static_cast<int>(columns_.rows()); }
  int k() const { return static_cast<int>(columns_.cols()); }
  const Matrix& columns() const { return columns_; }
  const HermitianForm& metric() const { return metric_; }

  /// h-distance from X to span(U).
  double distance(const Vector& x) const;

 private:
  Matrix columns_;
  HermitianForm metric_;
};

/// Holomorphic sectional curvature S(X,X,X,X)/|X|^4.
double hsc(const BihermitianForm& s, const HermitianForm& h, const Vector& x);

/// Ric(X, Y) = tr_h S(X, Y, ., .) by contraction with h^{-1}.
HermitianForm ricci_trace(const BihermitianForm& s, const HermitianForm& h);
/// Same tensor, summed over an h-unitary frame instead.
HermitianForm ricci_trace_frame(const BihermitianForm& s,
                                const HermitianForm& h);

/// tr_h Ric.
double scalar(const BihermitianForm& s, const HermitianForm& h);

/// sum_i S(X, X, u_i, u_i) over the orthonormal columns of U.
/// X must lie in span(U) to 1e-10 (relative), else DomainError.
double k_ricci_on(const BihermitianForm& s, const HermitianForm& h,
                  const SubspaceBasis& u, const Vector& x);

enum class Extreme { max, min };

struct KRicciExtreme {
  double value = 0.0;
  SubspaceBasis subspace;
};

/// Exact extreme of k_ricci_on over all k-dim U containing the h-unit X:
/// S(X,X,X,X) plus the k-1 largest (smallest) eigenvalues of
/// S(X,X,.,.) restricted to the h-orthocomplement of X.
KRicciExtreme k_ricci_extreme_at(const BihermitianForm& s,
                                 const HermitianForm& h, int k,
                                 const Vector& x, Extreme which);

/// Ric(X,X) + S(X,X,X,X)/|X|^2.
double ric_plus(const BihermitianForm& s, const HermitianForm& h,
                const Vector& x);

/// S + sigma B(h).
BihermitianForm shift_sigma(const BihermitianForm& s, const HermitianForm& h,
                            double sigma);

}  // namespace kricci
