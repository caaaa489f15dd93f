#pragma once

#include "kricci/bihermitian.hpp"
#include "kricci/curvature.hpp"

// Kernels shared by curvature.cpp and certify.cpp.  They work in an
// h-unitary frame, where the metric is the identity.
namespace kricci::detail {

struct FrameExtreme {
  double value = 0.0;    // k-Ricci extreme at c
  double quartic = 0.0;  // S(c, c, c, c)
  Matrix directions;     // n x (k-1), orthonormal, orthogonal to c
};

FrameExtreme frame_extreme(const BihermitianForm& s_frame, int k,
                           const Vector& c, Extreme which);

}  // namespace kricci::detail
