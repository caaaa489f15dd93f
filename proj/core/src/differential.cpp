#include "kricci/differential.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "kricci/errors.hpp"

namespace kricci {

std::string to_string(Discretization d) {
  return d == Discretization::fd2 ? "fd2" : "spectral";
}

Discretization discretization_from_string(const std::string& s) {
  if (s == "fd2") return Discretization::fd2;
  if (s == "spectral") return Discretization::spectral;
  throw DomainError("unknown discretization '" + s + "' (expected fd2 or spectral)");
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW's planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void check_size(const ComplexValues& f, const PeriodicGrid& grid) {
  if (f.size() != grid.size()) throw DomainError("field size does not match grid");
}

// Multi-dimensional DFT of a grid field, in place.
void dft(ComplexValues& data, const PeriodicGrid& grid, int sign) {
  int dims[4];
  for (int a = 0; a < grid.axes(); ++a) dims[a] = grid.N();
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(grid.axes(), dims, ptr, ptr, sign,
                         FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  if (plan == nullptr) throw NumericError("FFTW planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

// Signed mode number of DFT index m.
int mode(int m, int N) { return m < N / 2 ? m : m - N; }

bool is_nyquist(int m, int N) { return m == N / 2; }

// Fourier symbol of d/d(axis) at index m; zero at Nyquist.
Complex first_symbol(int m, int N) {
  if (is_nyquist(m, N)) return 0.0;
  return Complex(0.0, kTwoPi * mode(m, N));
}

// Fourier symbol of d^2/d(axis)^2; the Nyquist mode is kept.
double second_symbol(int m, int N) {
  const double k = is_nyquist(m, N) ? std::numbers::pi * N : kTwoPi * mode(m, N);
  return -k * k;
}

Complex pair_symbol(const PeriodicGrid& grid, std::size_t p, int a, int b) {
  const int N = grid.N();
  if (a == b) return second_symbol(grid.coord(p, a), N);
  return first_symbol(grid.coord(p, a), N) * first_symbol(grid.coord(p, b), N);
}

template <typename Symbol>
ComplexValues spectral_apply(const ComplexValues& f, const PeriodicGrid& grid,
                             Symbol symbol) {
  ComplexValues w = f;
  dft(w, grid, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (std::size_t p = 0; p < w.size(); ++p) w[p] *= symbol(p) * scale;
  dft(w, grid, FFTW_BACKWARD);
  return w;
}

ComplexValues fd_first(const ComplexValues& f, const PeriodicGrid& grid,
                       int a) {
  const double inv = 0.5 / grid.spacing();
  ComplexValues out(f.size());
  for (std::size_t p = 0; p < f.size(); ++p) {
    out[p] = (f[grid.shift(p, a, 1)] - f[grid.shift(p, a, -1)]) * inv;
  }
  return out;
}

ComplexValues fd_second(const ComplexValues& f, const PeriodicGrid& grid,
                        int a, int b) {
  const double dx = grid.spacing();
  ComplexValues out(f.size());
  if (a == b) {
    const double inv = 1.0 / (dx * dx);
    for (std::size_t p = 0; p < f.size(); ++p) {
      out[p] = (f[grid.shift(p, a, 1)] - 2.0 * f[p] + f[grid.shift(p, a, -1)]) *
               inv;
    }
    return out;
  }
  const double inv = 0.25 / (dx * dx);
  for (std::size_t p = 0; p < f.size(); ++p) {
    const std::size_t ap = grid.shift(p, a, 1);
    const std::size_t am = grid.shift(p, a, -1);
    out[p] = (f[grid.shift(ap, b, 1)] - f[grid.shift(ap, b, -1)] -
              f[grid.shift(am, b, 1)] + f[grid.shift(am, b, -1)]) *
             inv;
  }
  return out;
}

void check_axis(const PeriodicGrid& grid, int axis) {
  if (axis < 0 || axis >= grid.axes()) throw DomainError("axis out of range");
}

void check_index(const PeriodicGrid& grid, int k) {
  if (k < 0 || k >= grid.n()) throw DomainError("complex index out of range");
}

}  // namespace

ComplexValues to_complex(const ScalarField& f) {
  ComplexValues out(f.size());
  for (std::size_t p = 0; p < f.size(); ++p) out[p] = f[p];
  return out;
}

ComplexValues partial_real(const ComplexValues& f, const PeriodicGrid& grid,
                           int axis, Discretization d) {
  check_size(f, grid);
  check_axis(grid, axis);
  if (d == Discretization::fd2) return fd_first(f, grid, axis);
  return spectral_apply(f, grid, [&](std::size_t p) {
    return first_symbol(grid.coord(p, axis), grid.N());
  });
}

ComplexValues partial_holo(const ComplexValues& f, const PeriodicGrid& grid,
                           int k, Discretization d) {
  check_index(grid, k);
  const ComplexValues fx = partial_real(f, grid, 2 * k, d);
  const ComplexValues fy = partial_real(f, grid, 2 * k + 1, d);
  ComplexValues out(f.size());
  for (std::size_t p = 0; p < f.size(); ++p)
    out[p] = 0.5 * (fx[p] - Complex(0.0, 1.0) * fy[p]);
  return out;
}

ComplexValues partial_antiholo(const ComplexValues& f,
                               const PeriodicGrid& grid, int l,
                               Discretization d) {
  check_index(grid, l);
  const ComplexValues fx = partial_real(f, grid, 2 * l, d);
  const ComplexValues fy = partial_real(f, grid, 2 * l + 1, d);
  ComplexValues out(f.size());
  for (std::size_t p = 0; p < f.size(); ++p)
    out[p] = 0.5 * (fx[p] + Complex(0.0, 1.0) * fy[p]);
  return out;
}

ComplexValues ddbar(const ComplexValues& f, const PeriodicGrid& grid, int k,
                    int l, Discretization d) {
  check_size(f, grid);
  check_index(grid, k);
  check_index(grid, l);
  const int xk = 2 * k, yk = 2 * k + 1, xl = 2 * l, yl = 2 * l + 1;
  const Complex I(0.0, 1.0);
  if (d == Discretization::spectral) {
    return spectral_apply(f, grid, [&](std::size_t p) {
      return 0.25 * (pair_symbol(grid, p, xk, xl) + pair_symbol(grid, p, yk, yl) +
                     I * (pair_symbol(grid, p, xk, yl) -
                          pair_symbol(grid, p, yk, xl)));
    });
  }
  const ComplexValues a = fd_second(f, grid, xk, xl);
  const ComplexValues b = fd_second(f, grid, yk, yl);
  ComplexValues out(f.size());
  if (k == l) {
    // The two mixed terms share one symmetric stencil and cancel exactly.
    for (std::size_t p = 0; p < f.size(); ++p) out[p] = 0.25 * (a[p] + b[p]);
    return out;
  }
  const ComplexValues c = fd_second(f, grid, xk, yl);
  const ComplexValues e = fd_second(f, grid, yk, xl);
  for (std::size_t p = 0; p < f.size(); ++p)
    out[p] = 0.25 * (a[p] + b[p] + I * (c[p] - e[p]));
  return out;
}

HermitianField dbar_hessian(const ScalarField& f, Discretization d) {
  const PeriodicGrid& grid = f.grid();
  const ComplexValues fc = to_complex(f);
  HermitianField out(grid);
  for (int i = 0; i < grid.n(); ++i) {
    for (int j = i; j < grid.n(); ++j) {
      const ComplexValues hij = ddbar(fc, grid, i, j, d);
      for (std::size_t p = 0; p < grid.size(); ++p) out.set(p, i, j, hij[p]);
    }
  }
  return out;
}

}  // namespace kricci
