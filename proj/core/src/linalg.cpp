#include "kricci/linalg.hpp"

#include <cmath>

#include "kricci/errors.hpp"

namespace kricci {

HermitianForm::HermitianForm(int n) : entries_(Matrix::Zero(n, n)) {}

HermitianForm HermitianForm::identity(int n) {
  return scaled_identity(n, 1.0);
}

HermitianForm HermitianForm::scaled_identity(int n, double c) {
  HermitianForm a(n);
  for (int i = 0; i < n; ++i) a.entries_(i, i) = c;
  return a;
}

HermitianForm HermitianForm::hermitian_part(const Matrix& entries) {
  if (entries.rows() != entries.cols()) {
    throw DomainError("HermitianForm: matrix is not square");
  }
  HermitianForm a;
  const Matrix adj = entries.adjoint();
  a.entries_ = (entries + adj) * 0.5;
  return a;
}

HermitianForm HermitianForm::from_entries(const Matrix& entries, double tol) {
  if (entries.rows() != entries.cols()) {
    throw DomainError("HermitianForm: matrix is not square");
  }
  const double scale = 1.0 + entries.cwiseAbs().maxCoeff();
  const double dev = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol * scale) {
    throw DomainError("HermitianForm: input is not Hermitian (deviation " +
                      std::to_string(dev) + ")");
  }
  return hermitian_part(entries);
}

Complex HermitianForm::eval(const Vector& x, const Vector& y) const {
  return (x.transpose() * entries_ * y.conjugate())(0, 0);
}

double HermitianForm::quadratic(const Vector& x) const {
  return eval(x, x).real();
}

double HermitianForm::trace_wrt(const HermitianForm& h) const {
  Eigen::FullPivLU<Matrix> lu(h.entries_);
  if (!lu.isInvertible()) throw DomainError("trace_wrt: singular metric");
  const Matrix hinv = lu.inverse();
  // sum_ij A_ij (h^{-1})_ji = trace(A h^{-1})
  return (entries_ * hinv).trace().real();
}

RealVector HermitianForm::eigenvalues_wrt(const HermitianForm& h) const {
  const Matrix p = unitary_frame(h);
  const Matrix m = p.adjoint() * op() * p;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double HermitianForm::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double HermitianForm::max_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(dim() - 1);
}

HermitianForm& HermitianForm::operator+=(const HermitianForm& o) {
  entries_ += o.entries_;
  return *this;
}

HermitianForm& HermitianForm::operator-=(const HermitianForm& o) {
  entries_ -= o.entries_;
  return *this;
}

HermitianForm& HermitianForm::operator*=(double c) {
  entries_ *= c;
  return *this;
}

Matrix unitary_frame(const HermitianForm& h) {
  const int n = h.dim();
  Eigen::LLT<Matrix> llt(h.op());
  if (llt.info() != Eigen::Success) {
    throw DomainError("unitary_frame: metric is not positive definite");
  }
  // op(h) = L L^H  =>  P = L^{-H} satisfies P^H op(h) P = I.
  const Matrix l = llt.matrixL();
  return l.adjoint().triangularView<Eigen::Upper>().solve(
      Matrix::Identity(n, n));
}

SimultaneousFrame simultaneous_frame(const HermitianForm& g,
                                     const HermitianForm& h) {
  const Matrix p = unitary_frame(g);
  const Matrix m = p.adjoint() * h.op() * p;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) {
    throw NumericError("simultaneous_frame: eigensolver failed");
  }
  return {p * es.eigenvectors(), es.eigenvalues()};
}

HermitianForm in_frame(const HermitianForm& a, const Matrix& p) {
  return HermitianForm::hermitian_part(p.transpose() * a.entries() *
                                       p.conjugate());
}

double norm_sq(const Vector& x, const HermitianForm& h) {
  return h.quadratic(x);
}

Vector random_gaussian_vector(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v;
}

Matrix random_gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

Matrix random_unitary(int n, Rng& rng) {
  const Matrix z = random_gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  return q;
}

HermitianForm random_metric(int n, Rng& rng) {
  const Matrix a = random_gaussian_matrix(n, n, rng);
  Matrix m = a * a.adjoint() + static_cast<double>(n) * Matrix::Identity(n, n);
  m /= (m.trace().real() / n);
  return HermitianForm::hermitian_part(m);
}

HermitianForm random_hermitian(int n, Rng& rng) {
  const Matrix a = random_gaussian_matrix(n, n, rng);
  return HermitianForm::hermitian_part(a);
}

Vector random_unit_vector(const HermitianForm& h, Rng& rng) {
  const int n = h.dim();
  Vector c = random_gaussian_vector(n, rng);
  while (c.norm() == 0.0) c = random_gaussian_vector(n, rng);
  c /= c.norm();
  return unitary_frame(h) * c;
}

}  // namespace kricci
