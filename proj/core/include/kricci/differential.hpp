#pragma once

#include <string>

#include "kricci/grid.hpp"

namespace kricci {

/// fd2: second-order centred differences.  spectral: FFT differentiation
/// (first-derivative Nyquist modes dropped).
enum class Discretization { fd2, spectral };

std::string to_string(Discretization d);
/// DomainError for anything other than "fd2" or "spectral".
Discretization discretization_from_string(const std::string& s);

/// d/d(axis) of a periodic field.  Axis 2j is x_{j+1}, axis 2j+1 is y_{j+1}.
ComplexValues partial_real(const ComplexValues& f, const PeriodicGrid& grid,
                           int axis, Discretization d = Discretization::fd2);

/// d/dz_k = (d/dx_k - i d/dy_k) / 2.
ComplexValues partial_holo(const ComplexValues& f, const PeriodicGrid& grid,
                           int k, Discretization d = Discretization::fd2);

/// d/d(conj z_l) = (d/dx_l + i d/dy_l) / 2.
ComplexValues partial_antiholo(const ComplexValues& f,
                               const PeriodicGrid& grid, int l,
                               Discretization d = Discretization::fd2);

/// d_k d_{conj l} f of a complex field.
ComplexValues ddbar(const ComplexValues& f, const PeriodicGrid& grid, int k,
                    int l, Discretization d = Discretization::fd2);

/// Complex Hessian d_i d_{conj j} f of a real field.  The result is Hermitian
/// at every point by construction: the upper triangle is computed and the
/// lower one mirrored.
HermitianField dbar_hessian(const ScalarField& f,
                            Discretization d = Discretization::fd2);

ComplexValues to_complex(const ScalarField& f);

}  // namespace kricci
