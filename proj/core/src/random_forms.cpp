#include "kricci/random_forms.hpp"

#include <cmath>

#include "kricci/curvature.hpp"
#include "kricci/errors.hpp"

namespace kricci {

namespace {
constexpr int kMaxShiftAttempts = 100;
}

ConstrainedForm constrain_ric_k_upper(const BihermitianForm& s,
                                      const HermitianForm& h, int k,
                                      double bound, const CertifyOptions& opts,
                                      double margin) {
  const double gap = margin * (1.0 + std::abs(bound));
  ConstrainedForm out;
  out.form = s;
  CertifyOptions o = opts;
  for (int attempt = 1; attempt <= kMaxShiftAttempts; ++attempt) {
    out.attempts = attempt;
    out.certificate = certify_k_ricci(out.form, h, k, bound - gap,
                                      Direction::upper, o);
    if (out.certificate.status == CertStatus::satisfied) return out;
    // Ric_k(S + s B) = Ric_k(S) + (k+1) s; aim the sup at bound - gap.
    const double delta =
        (bound - gap - out.certificate.extremal_value) / (k + 1.0);
    if (delta < 0.0) {
      out.form = shift_sigma(out.form, h, delta);
      out.shift += delta;
    } else {
      // Satisfied by value but the search did not converge: retry with a
      // different seed.
      o.seed += 0x9e3779b97f4a7c15ull;
    }
  }
  throw NumericError("generate_ric_k_upper: constraint not reached in " +
                     std::to_string(kMaxShiftAttempts) + " shift attempts");
}

ConstrainedForm generate_ric_k_upper(int n, int k, double bound,
                                     const HermitianForm& h, Rng& rng,
                                     const CertifyOptions& opts,
                                     double margin) {
  if (k < 1 || k > n) throw DomainError("generate_ric_k_upper: k out of range");
  return constrain_ric_k_upper(random_bihermitian(n, rng), h, k, bound, opts,
                               margin);
}

}  // namespace kricci
