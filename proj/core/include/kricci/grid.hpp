#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "kricci/bihermitian.hpp"
#include "kricci/linalg.hpp"

namespace kricci {

/// Uniform grid on the flat torus C^n / (Z^n + i Z^n), n in {1, 2}.
///
/// Real axes are ordered (x_1, y_1, ..., x_n, y_n) and points are stored
/// row-major in that order, so x_1 varies slowest.
class PeriodicGrid {
 public:
  PeriodicGrid() = default;
  /// DomainError unless n in {1, 2} and N >= 8 is even.
  PeriodicGrid(int n, int N);

  int n() const { return n_; }
  int N() const { return N_; }
  int axes() const { return 2 * n_; }
  std::size_t size() const { return size_; }
  double spacing() const { return 1.0 / N_; }
  std::size_t stride(int axis) const { return strides_[axis]; }

  /// Grid coordinate (integer) along an axis.
  int coord(std::size_t p, int axis) const {
    return static_cast<int>((p / strides_[axis]) % N_);
  }
  /// Position in [0, 1) along an axis.
  double position(std::size_t p, int axis) const {
    return coord(p, axis) * spacing();
  }
  /// Neighbour `offset` steps along `axis`, with periodic wrap-around.
  std::size_t shift(std::size_t p, int axis, int offset) const {
    const int c = coord(p, axis);
    int m = (c + offset) % N_;
    if (m < 0) m += N_;
    return p + (static_cast<std::ptrdiff_t>(m) - c) *
                   static_cast<std::ptrdiff_t>(strides_[axis]);
  }

  friend bool operator==(const PeriodicGrid& a, const PeriodicGrid& b) {
    return a.n_ == b.n_ && a.N_ == b.N_;
  }

 private:
  int n_ = 0;
  int N_ = 0;
  std::size_t size_ = 0;
  std::array<std::size_t, 4> strides_{};
};

/// Real value per grid point.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const PeriodicGrid& grid, double value = 0.0)
      : grid_(grid), values_(grid.size(), value) {}
  ScalarField(const PeriodicGrid& grid, std::vector<double> values);

  const PeriodicGrid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t p) { return values_[p]; }
  double operator[](std::size_t p) const { return values_[p]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double min() const;
  double max() const;
  double mean() const;
  double max_abs() const;
  bool all_finite() const;
  /// Subtracts the mean.
  ScalarField normalized() const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double c);
  ScalarField& operator+=(double c);
  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(double c, ScalarField a) { return a *= c; }

 private:
  PeriodicGrid grid_;
  std::vector<double> values_;
};

/// Complex value per grid point (intermediate derivatives of metric entries).
using ComplexValues = std::vector<Complex>;

/// Hermitian n x n matrix per grid point, entries A(e_i, conj e_j).
/// Used for metrics (positive) and for Ricci forms and twists (indefinite).
class HermitianField {
 public:
  HermitianField() = default;
  /// Zero field.
  explicit HermitianField(const PeriodicGrid& grid);
  static HermitianField identity(const PeriodicGrid& grid);
  static HermitianField constant(const PeriodicGrid& grid,
                                 const HermitianForm& a);

  const PeriodicGrid& grid() const { return grid_; }
  int n() const { return grid_.n(); }
  std::size_t size() const { return grid_.size(); }

  Complex operator()(std::size_t p, int i, int j) const {
    return data_[(p * n() + i) * n() + j];
  }
  /// Sets entry (i, j) and its conjugate partner (j, i); diagonal entries
  /// keep only the real part.
  void set(std::size_t p, int i, int j, Complex v);
  HermitianForm at(std::size_t p) const;
  void assign(std::size_t p, const HermitianForm& a);

  /// Component (i, j) across the grid.
  ComplexValues component(int i, int j) const;

  HermitianField& operator+=(const HermitianField& o);
  HermitianField& operator-=(const HermitianField& o);
  HermitianField& operator*=(double c);
  friend HermitianField operator+(HermitianField a, const HermitianField& b) { return a += b; }
  friend HermitianField operator-(HermitianField a, const HermitianField& b) { return a -= b; }
  friend HermitianField operator*(double c, HermitianField a) { return a *= c; }

  double max_abs() const;
  const std::vector<Complex>& data() const { return data_; }

 private:
  PeriodicGrid grid_;
  std::vector<Complex> data_;
};

using MetricField = HermitianField;

/// Bihermitian form per grid point.
class CurvatureField {
 public:
  CurvatureField() = default;
  explicit CurvatureField(const PeriodicGrid& grid);

  const PeriodicGrid& grid() const { return grid_; }
  int n() const { return grid_.n(); }
  Complex operator()(std::size_t p, int i, int j, int k, int l) const {
    return data_[index(p, i, j, k, l)];
  }
  Complex& raw(std::size_t p, int i, int j, int k, int l) {
    return data_[index(p, i, j, k, l)];
  }
  BihermitianForm at(std::size_t p) const;
  Tensor4 raw_at(std::size_t p) const;
  void assign(std::size_t p, const BihermitianForm& s);

  /// Largest symmetry violation of the discretized tensor before it was
  /// projected onto the symmetric class.
  double raw_symmetry_violation = 0.0;

  const std::vector<Complex>& data() const { return data_; }

 private:
  std::size_t index(std::size_t p, int i, int j, int k, int l) const {
    const std::size_t n = static_cast<std::size_t>(grid_.n());
    return (((p * n + i) * n + j) * n + k) * n + l;
  }
  PeriodicGrid grid_;
  std::vector<Complex> data_;
};

// Pointwise kernels for n in {1, 2}.
namespace pointwise {
/// det of the Hermitian matrix at p (real).
double det(const HermitianField& a, std::size_t p);
/// Inverse matrix entries inv(i, j) with sum_j inv(i, j) A(k, j) = delta_ik,
/// i.e. the contravariant tensor A^{i conj j}.
void inverse(const HermitianField& a, std::size_t p, Complex out[2][2]);
/// Smallest and largest eigenvalue.
std::array<double, 2> eig_range(const HermitianField& a, std::size_t p);
}  // namespace pointwise

}  // namespace kricci
