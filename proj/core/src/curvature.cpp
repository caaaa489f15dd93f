#include "kricci/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kricci/detail/frame_ops.hpp"
#include "kricci/errors.hpp"

namespace kricci {

namespace {

double orthonormality_defect(const Matrix& cols, const HermitianForm& h) {
  const int k = static_cast<int>(cols.cols());
  const Matrix gram = cols.adjoint() * h.op() * cols;
  return (gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();
}

// Rotate v so that its largest-magnitude component (first one on ties) is
// real and positive.
void normalize_phase(Eigen::Ref<Vector> v) {
  int best = 0;
  double best_abs = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs * (1.0 + 1e-12)) {
      best = i;
      best_abs = a;
    }
  }
  if (best_abs > 0) v *= std::conj(v(best)) / best_abs;
}

}  // namespace

SubspaceBasis::SubspaceBasis(Matrix columns, HermitianForm metric, double tol)
    : columns_(std::move(columns)), metric_(std::move(metric)) {
  if (columns_.rows() != metric_.dim()) {
    throw DomainError("SubspaceBasis: dimension mismatch");
  }
  const double d = orthonormality_defect(columns_, metric_);
  if (d > tol) {
    throw DomainError("SubspaceBasis: columns not h-orthonormal (defect " +
                      std::to_string(d) + ")");
  }
}

SubspaceBasis SubspaceBasis::orthonormalize(const Matrix& columns,
                                            const HermitianForm& metric) {
  const Matrix hop = metric.op();
  Matrix q = columns;
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < q.cols(); ++j) {
      for (int i = 0; i < j; ++i) {
        const Complex c = (q.col(i).adjoint() * hop * q.col(j))(0, 0);
        q.col(j) -= c * q.col(i);
      }
      const double nrm =
          std::sqrt((q.col(j).adjoint() * hop * q.col(j))(0, 0).real());
      if (!(nrm > 1e-13)) {
        throw DomainError("SubspaceBasis: columns are linearly dependent");
      }
      q.col(j) /= nrm;
    }
  }
  return SubspaceBasis(std::move(q), metric);
}

double SubspaceBasis::distance(const Vector& x) const {
  const Matrix hop = metric_.op();
  // Coefficient of u_i is h(X, conj u_i) = u_i^H op(h) X.
  const Vector coeff = columns_.adjoint() * hop * x;
  const Vector r = x - columns_ * coeff;
  return std::sqrt(std::max(0.0, (r.adjoint() * hop * r)(0, 0).real()));
}

double hsc(const BihermitianForm& s, const HermitianForm& h, const Vector& x) {
  const double nx = norm_sq(x, h);
  if (!(nx > 0.0)) throw DomainError("hsc: zero vector");
  return s.quartic(x) / (nx * nx);
}

HermitianForm ricci_trace(const BihermitianForm& s, const HermitianForm& h) {
  const int n = s.dim();
  Eigen::FullPivLU<Matrix> lu(h.entries());
  if (!lu.isInvertible()) throw DomainError("ricci_trace: singular metric");
  const Matrix hinv = lu.inverse();
  Matrix ric = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) ric(i, j) += s(i, j, k, l) * hinv(l, k);
  return HermitianForm::hermitian_part(ric);
}

HermitianForm ricci_trace_frame(const BihermitianForm& s,
                                const HermitianForm& h) {
  const int n = s.dim();
  const Matrix p = unitary_frame(h);
  const Matrix ppt = p * p.adjoint();  // sum_a P_ka conj(P_la)
  Matrix ric = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) ric(i, j) += s(i, j, k, l) * ppt(k, l);
  return HermitianForm::hermitian_part(ric);
}

double scalar(const BihermitianForm& s, const HermitianForm& h) {
  return ricci_trace(s, h).trace_wrt(h);
}

double k_ricci_on(const BihermitianForm& s, const HermitianForm& h,
                  const SubspaceBasis& u, const Vector& x) {
  if (u.n() != s.dim() || h.dim() != s.dim() || x.size() != s.dim()) {
    throw DomainError("k_ricci_on: dimension mismatch");
  }
  const double defect = orthonormality_defect(u.columns(), h);
  if (defect > 1e-10) {
    throw DomainError("k_ricci_on: U is not h-orthonormal");
  }
  const double nx = std::sqrt(norm_sq(x, h));
  const SubspaceBasis wrt_h(u.columns(), h, 1e-10);
  if (wrt_h.distance(x) > 1e-10 * std::max(1.0, nx)) {
    throw DomainError("k_ricci_on: X does not lie in U");
  }
  const HermitianForm ax = s.partial(x);
  double acc = 0.0;
  for (int i = 0; i < u.k(); ++i) acc += ax.quadratic(u.columns().col(i));
  return acc;
}

namespace detail {

FrameExtreme frame_extreme(const BihermitianForm& s_frame, int k,
                           const Vector& c, Extreme which) {
  const int n = s_frame.dim();
  FrameExtreme out;
  out.quartic = s_frame.quartic(c);
  out.value = out.quartic;
  out.directions = Matrix(n, k - 1);
  if (k == 1) return out;

  // Orthonormal basis of the complement of c: columns 1..n-1 of a unitary
  // matrix whose first column is parallel to c.
  const Matrix cm = c;
  Eigen::HouseholderQR<Matrix> qr(cm);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix f = q.rightCols(n - 1);

  const HermitianForm ax = s_frame.partial(c);
  const Matrix m = f.adjoint() * ax.op() * f;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) {
    throw NumericError("k_ricci_extreme_at: eigensolver failed");
  }
  const RealVector& ev = es.eigenvalues();  // ascending
  std::vector<int> order(n - 1);
  std::iota(order.begin(), order.end(), 0);
  if (which == Extreme::max) std::reverse(order.begin(), order.end());
  for (int a = 0; a < k - 1; ++a) {
    const int idx = order[a];
    out.value += ev(idx);
    Vector v = f * es.eigenvectors().col(idx);
    normalize_phase(v);
    out.directions.col(a) = v;
  }
  return out;
}

}  // namespace detail

KRicciExtreme k_ricci_extreme_at(const BihermitianForm& s,
                                 const HermitianForm& h, int k,
                                 const Vector& x, Extreme which) {
  const int n = s.dim();
  if (k < 1 || k > n) {
    throw DomainError("k_ricci_extreme_at: k must lie in [1, n]");
  }
  const double nx = norm_sq(x, h);
  if (std::abs(nx - 1.0) > 1e-10) {
    throw DomainError("k_ricci_extreme_at: X must be h-unit");
  }
  const Matrix p = unitary_frame(h);
  const Matrix pinv = p.adjoint() * h.op();
  const Vector c = pinv * x;
  const BihermitianForm sf = s.in_frame(p);
  const detail::FrameExtreme fe = detail::frame_extreme(sf, k, c, which);

  Matrix cols(n, k);
  cols.col(0) = x;
  if (k > 1) cols.rightCols(k - 1) = p * fe.directions;
  KRicciExtreme r;
  r.value = fe.value;
  r.subspace = SubspaceBasis(std::move(cols), h, 1e-10);
  return r;
}

double ric_plus(const BihermitianForm& s, const HermitianForm& h,
                const Vector& x) {
  const double nx = norm_sq(x, h);
  if (!(nx > 0.0)) throw DomainError("ric_plus: zero vector");
  return ricci_trace(s, h).quadratic(x) + s.quartic(x) / nx;
}

BihermitianForm shift_sigma(const BihermitianForm& s, const HermitianForm& h,
                            double sigma) {
  if (sigma == 0.0) return s;
  return s + sigma * b_form(h);
}

}  // namespace kricci
