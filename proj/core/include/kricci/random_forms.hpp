#pragma once

#include "kricci/bihermitian.hpp"
#include "kricci/certify.hpp"

namespace kricci {

/// A random form shifted by sigma B(h) until Ric_k <= bound certifies.
struct ConstrainedForm {
  BihermitianForm form;
  double shift = 0.0;  // total sigma added
  int attempts = 0;
  Certificate certificate;
};

/// Draws a complex-Gaussian symmetrized form and shifts it along B(h) so
/// that the certified sup of Ric_k sits `margin` below `bound`.  Throws
/// NumericError if 100 shift attempts do not produce a satisfied
/// certificate.
ConstrainedForm generate_ric_k_upper(int n, int k, double bound,
                                     const HermitianForm& h, Rng& rng,
                                     const CertifyOptions& opts = {},
                                     double margin = 1e-7);

/// Shifts an existing form the same way.
ConstrainedForm constrain_ric_k_upper(const BihermitianForm& s,
                                      const HermitianForm& h, int k,
                                      double bound,
                                      const CertifyOptions& opts = {},
                                      double margin = 1e-7);

}  // namespace kricci
