#pragma once

#include <cstdint>
#include <string>

#include "kricci/bihermitian.hpp"
#include "kricci/curvature.hpp"

namespace kricci {

enum class Direction { upper, lower };
enum class CertStatus { satisfied, violated, inconclusive };

std::string to_string(Direction d);
std::string to_string(CertStatus s);
Direction direction_from_string(const std::string& s);
CertStatus status_from_string(const std::string& s);

struct CertifyOptions {
  int n_starts = 64;
  int max_iter = 500;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  /// Random directions evaluated before the local searches; the best of
  /// them seed half of the starts.
  int presweep = 2048;
};

/// Outcome of a global check of Ric_k <= bound (upper) or >= bound (lower).
struct Certificate {
  double bound = 0.0;
  Direction direction = Direction::upper;
  int k = 1;
  double tol = 0.0;
  double extremal_value = 0.0;
  Vector witness;
  SubspaceBasis subspace_witness;
  int n_starts = 0;
  int n_converged = 0;
  int n_iterations = 0;
  CertStatus status = CertStatus::inconclusive;
};

/// Multistart Riemannian gradient search of the k-Ricci extreme over the
/// h-unit sphere.  Never claims more than it found: "violated" always comes
/// with a witness whose direct re-evaluation crosses the bound by more than
/// opts.tol, and a run with no converged start is "inconclusive".
Certificate certify_k_ricci(const BihermitianForm& s, const HermitianForm& h,
                            int k, double bound, Direction direction,
                            const CertifyOptions& opts = {});

/// Re-evaluates k_ricci_on at the certificate's witness pair.
double reevaluate(const Certificate& c, const BihermitianForm& s,
                  const HermitianForm& h);

/// sup (or inf) of the k-Ricci curvature over the sphere, i.e. the
/// extremal value of certify_k_ricci without a bound.
Certificate extremal_k_ricci(const BihermitianForm& s, const HermitianForm& h,
                             int k, Direction direction,
                             const CertifyOptions& opts = {});

namespace detail {
/// Riemannian gradient of the k-Ricci extreme at the unit vector c in an
/// h-unitary frame.  Exposed for finite-difference tests.
Vector frame_gradient(const BihermitianForm& s_frame, int k, const Vector& c,
                      Extreme which);
}  // namespace detail

}  // namespace kricci
