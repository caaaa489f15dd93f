#include "kricci/bihermitian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kricci/errors.hpp"

namespace kricci {

Tensor4::Tensor4(int n)
    : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, Complex(0.0)) {}

Tensor4::Tensor4(int n, std::vector<Complex> entries)
    : n_(n), data_(std::move(entries)) {
  if (data_.size() != static_cast<std::size_t>(n) * n * n * n) {
    throw DomainError("Tensor4: expected n^4 entries");
  }
}

SymmetryReport validate_symmetries(const Tensor4& t, double tol) {
  const int n = t.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const Complex s = t(i, j, k, l);
          worst = std::max(worst, std::abs(s - t(k, j, i, l)));
          worst = std::max(worst, std::abs(std::conj(s) - t(j, i, l, k)));
        }
  return {worst, worst <= tol};
}

BihermitianForm symmetrize(const Tensor4& t) {
  const int n = t.dim();
  Tensor4 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const Complex plain =
              t(i, j, k, l) + t(k, j, i, l) + t(i, l, k, j) + t(k, l, i, j);
          const Complex conjugated = t(j, i, l, k) + t(l, i, j, k) +
                                     t(j, k, l, i) + t(l, k, j, i);
          out(i, j, k, l) = (plain + std::conj(conjugated)) * 0.125;
        }
  return BihermitianForm(std::move(out));
}

BihermitianForm BihermitianForm::from_symmetric(const Tensor4& t, double tol) {
  double scale = 1.0;
  for (const auto& z : t.data()) scale = std::max(scale, std::abs(z));
  const SymmetryReport r = validate_symmetries(t, tol * scale);
  if (!r.ok) {
    throw DomainError("BihermitianForm: symmetry violated by " +
                      std::to_string(r.max_violation));
  }
  return symmetrize(t);
}

double BihermitianForm::max_abs() const {
  double m = 0.0;
  for (const auto& z : t_.data()) m = std::max(m, std::abs(z));
  return m;
}

Complex BihermitianForm::eval(const Vector& x, const Vector& y, const Vector& z,
                              const Vector& w) const {
  const int n = dim();
  Complex acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex xy = x(i) * std::conj(y(j));
      if (xy == 0.0) continue;
      Complex inner = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          inner += z(k) * std::conj(w(l)) * t_(i, j, k, l);
      acc += xy * inner;
    }
  return acc;
}

double BihermitianForm::quartic(const Vector& x) const {
  const Complex v = eval(x, x, x, x);
  const double nx = x.squaredNorm();
  const double scale = max_abs() * nx * nx * dim() * dim() + 1e-300;
  if (std::abs(v.imag()) > kRealityTol * scale) {
    throw NumericError("quartic: S(X,X,X,X) has imaginary part " +
                       std::to_string(v.imag()) + "; symmetry corrupted");
  }
  return v.real();
}

HermitianForm BihermitianForm::partial(const Vector& x) const {
  const int n = dim();
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex xx = x(i) * std::conj(x(j));
      if (xx == 0.0) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) a(k, l) += xx * t_(i, j, k, l);
    }
  return HermitianForm::hermitian_part(a);
}

BihermitianForm BihermitianForm::in_frame(const Matrix& p) const {
  const int n = dim();
  // Four successive mode products; slots 1 and 3 take P, slots 2 and 4 conj P.
  Tensor4 cur = t_;
  for (int slot = 0; slot < 4; ++slot) {
    Tensor4 next(n);
    const bool conjugate = (slot % 2) == 1;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            int idx[4] = {i, j, k, l};
            const int out = idx[slot];
            Complex acc = 0.0;
            for (int m = 0; m < n; ++m) {
              idx[slot] = m;
              const Complex c = conjugate ? std::conj(p(m, out)) : p(m, out);
              acc += c * cur(idx[0], idx[1], idx[2], idx[3]);
            }
            next(i, j, k, l) = acc;
          }
    cur = std::move(next);
  }
  return symmetrize(cur);
}

BihermitianForm& BihermitianForm::operator+=(const BihermitianForm& o) {
  for (std::size_t i = 0; i < t_.data().size(); ++i)
    t_.data()[i] += o.t_.data()[i];
  return *this;
}

BihermitianForm& BihermitianForm::operator-=(const BihermitianForm& o) {
  for (std::size_t i = 0; i < t_.data().size(); ++i)
    t_.data()[i] -= o.t_.data()[i];
  return *this;
}

BihermitianForm& BihermitianForm::operator*=(double c) {
  for (auto& z : t_.data()) z *= c;
  return *this;
}

BihermitianForm b_form(const HermitianForm& h) {
  const int n = h.dim();
  Tensor4 t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          t(i, j, k, l) = h(i, j) * h(k, l) + h(i, l) * h(k, j);
  return symmetrize(t);
}

BihermitianForm symmetric_product(const HermitianForm& a,
                                  const HermitianForm& b) {
  const int n = a.dim();
  Tensor4 t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          t(i, j, k, l) = 0.25 * (a(i, j) * b(k, l) + a(k, l) * b(i, j) +
                                  a(i, l) * b(k, j) + a(k, j) * b(i, l));
  return symmetrize(t);
}

Tensor4 random_tensor(int n, Rng& rng) {
  Tensor4 t(n);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& z : t.data()) z = Complex(normal(rng), normal(rng));
  return t;
}

BihermitianForm random_bihermitian(int n, Rng& rng) {
  return symmetrize(random_tensor(n, rng));
}

}  // namespace kricci
