#include "kricci/grid.hpp"

#include <algorithm>
#include <cmath>

#include "kricci/errors.hpp"

namespace kricci {

PeriodicGrid::PeriodicGrid(int n, int N) : n_(n), N_(N) {
  if (n != 1 && n != 2) throw DomainError("PeriodicGrid: n must be 1 or 2");
  if (N < 8 || N % 2 != 0) {
    throw DomainError("PeriodicGrid: N must be even and >= 8");
  }
  const int a = 2 * n;
  std::size_t s = 1;
  for (int axis = a - 1; axis >= 0; --axis) {
    strides_[axis] = s;
    s *= static_cast<std::size_t>(N);
  }
  size_ = s;
}

ScalarField::ScalarField(const PeriodicGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DomainError("ScalarField: size does not match grid");
  }
}

double ScalarField::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double ScalarField::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

double ScalarField::mean() const {
  // Kahan summation.
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values_) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(values_.size());
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

ScalarField ScalarField::normalized() const {
  ScalarField out = *this;
  out += -mean();
  return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  if (!(grid_ == o.grid_)) throw DomainError("ScalarField: grid mismatch");
  for (std::size_t p = 0; p < values_.size(); ++p) values_[p] += o.values_[p];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  if (!(grid_ == o.grid_)) throw DomainError("ScalarField: grid mismatch");
  for (std::size_t p = 0; p < values_.size(); ++p) values_[p] -= o.values_[p];
  return *this;
}

ScalarField& ScalarField::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

ScalarField& ScalarField::operator+=(double c) {
  for (double& v : values_) v += c;
  return *this;
}

HermitianField::HermitianField(const PeriodicGrid& grid)
    : grid_(grid),
      data_(grid.size() * static_cast<std::size_t>(grid.n() * grid.n())) {}

HermitianField HermitianField::identity(const PeriodicGrid& grid) {
  HermitianField f(grid);
  for (std::size_t p = 0; p < grid.size(); ++p)
    for (int i = 0; i < grid.n(); ++i) f.set(p, i, i, 1.0);
  return f;
}

HermitianField HermitianField::constant(const PeriodicGrid& grid,
                                        const HermitianForm& a) {
  if (a.dim() != grid.n()) throw DomainError("HermitianField: dimension mismatch");
  HermitianField f(grid);
  for (std::size_t p = 0; p < grid.size(); ++p) f.assign(p, a);
  return f;
}

void HermitianField::set(std::size_t p, int i, int j, Complex v) {
  const int n = this->n();
  if (i == j) {
    data_[(p * n + i) * n + i] = Complex(v.real(), 0.0);
  } else {
    data_[(p * n + i) * n + j] = v;
    data_[(p * n + j) * n + i] = std::conj(v);
  }
}

HermitianForm HermitianField::at(std::size_t p) const {
  const int n = this->n();
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = (*this)(p, i, j);
  return HermitianForm::hermitian_part(m);
}

void HermitianField::assign(std::size_t p, const HermitianForm& a) {
  for (int i = 0; i < n(); ++i)
    for (int j = i; j < n(); ++j) set(p, i, j, a(i, j));
}

ComplexValues HermitianField::component(int i, int j) const {
  ComplexValues out(size());
  for (std::size_t p = 0; p < size(); ++p) out[p] = (*this)(p, i, j);
  return out;
}

HermitianField& HermitianField::operator+=(const HermitianField& o) {
  if (!(grid_ == o.grid_)) throw DomainError("HermitianField: grid mismatch");
  for (std::size_t q = 0; q < data_.size(); ++q) data_[q] += o.data_[q];
  return *this;
}

HermitianField& HermitianField::operator-=(const HermitianField& o) {
  if (!(grid_ == o.grid_)) throw DomainError("HermitianField: grid mismatch");
  for (std::size_t q = 0; q < data_.size(); ++q) data_[q] -= o.data_[q];
  return *this;
}

HermitianField& HermitianField::operator*=(double c) {
  for (Complex& z : data_) z *= c;
  return *this;
}

double HermitianField::max_abs() const {
  double m = 0.0;
  for (const Complex& z : data_) m = std::max(m, std::abs(z));
  return m;
}

CurvatureField::CurvatureField(const PeriodicGrid& grid)
    : grid_(grid),
      data_(grid.size() * static_cast<std::size_t>(grid.n() * grid.n() *
                                                   grid.n() * grid.n())) {}

Tensor4 CurvatureField::raw_at(std::size_t p) const {
  const int n = this->n();
  const std::size_t block = static_cast<std::size_t>(n * n * n * n);
  std::vector<Complex> v(data_.begin() + p * block,
                         data_.begin() + (p + 1) * block);
  return Tensor4(n, std::move(v));
}

BihermitianForm CurvatureField::at(std::size_t p) const {
  return symmetrize(raw_at(p));
}

void CurvatureField::assign(std::size_t p, const BihermitianForm& s) {
  const int n = this->n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) raw(p, i, j, k, l) = s(i, j, k, l);
}

namespace pointwise {

double det(const HermitianField& a, std::size_t p) {
  if (a.n() == 1) return a(p, 0, 0).real();
  return a(p, 0, 0).real() * a(p, 1, 1).real() - std::norm(a(p, 0, 1));
}

void inverse(const HermitianField& a, std::size_t p, Complex out[2][2]) {
  if (a.n() == 1) {
    out[0][0] = 1.0 / a(p, 0, 0).real();
    return;
  }
  const double d = det(a, p);
  // Matrix inverse M^{-1} of M = [[a, b], [conj b, c]] is
  // [[c, -b], [-conj b, a]] / d; out(i, j) = M^{-1}(j, i).
  out[0][0] = a(p, 1, 1).real() / d;
  out[1][1] = a(p, 0, 0).real() / d;
  out[0][1] = -a(p, 1, 0) / d;
  out[1][0] = -a(p, 0, 1) / d;
}

std::array<double, 2> eig_range(const HermitianField& a, std::size_t p) {
  if (a.n() == 1) {
    const double v = a(p, 0, 0).real();
    return {v, v};
  }
  const double x = a(p, 0, 0).real();
  const double z = a(p, 1, 1).real();
  const double mid = 0.5 * (x + z);
  const double rad = std::hypot(0.5 * (x - z), std::abs(a(p, 0, 1)));
  return {mid - rad, mid + rad};
}

}  // namespace pointwise

}  // namespace kricci
