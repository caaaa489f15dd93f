#include "kricci/royden.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "kricci/certify.hpp"
#include "kricci/curvature.hpp"
#include "kricci/errors.hpp"

namespace kricci {

void CurvatureParams::validate(int n) const {
  if (!(alpha > 0.0)) throw DomainError("CurvatureParams: alpha must be > 0");
  if (!(beta > 0.0)) throw DomainError("CurvatureParams: beta must be > 0");
  if (k < 1 || k > n) throw DomainError("CurvatureParams: k must lie in [1, n]");
}

namespace {

struct RoydenFrame {
  SimultaneousFrame frame;
  BihermitianForm s;  // S in the frame
};

RoydenFrame royden_frame(const BihermitianForm& s, const HermitianForm& h,
                         const HermitianForm& g) {
  const int n = s.dim();
  if (h.dim() != n || g.dim() != n) {
    throw DomainError("royden: dimension mismatch");
  }
  SimultaneousFrame f;
  try {
    f = simultaneous_frame(g, h);
  } catch (const DomainError& e) {
    throw NumericError(std::string("royden: cannot build g-unitary, "
                                   "h-diagonal frame: ") + e.what());
  }
  if (!f.frame.allFinite() || !f.tau.allFinite()) {
    throw NumericError("royden: frame construction produced non-finite values");
  }
  return {f, s.in_frame(f.frame)};
}

double diag_double_trace(const BihermitianForm& sf) {
  double acc = 0.0;
  for (int i = 0; i < sf.dim(); ++i)
    for (int k = 0; k < sf.dim(); ++k) acc += sf(i, i, k, k).real();
  return acc;
}

double diag_quartic(const BihermitianForm& sf) {
  double acc = 0.0;
  for (int i = 0; i < sf.dim(); ++i) acc += sf(i, i, i, i).real();
  return acc;
}

}  // namespace

RoydenSums royden_sum_bruteforce(const BihermitianForm& s,
                                 const HermitianForm& h,
                                 const HermitianForm& g,
                                 const std::optional<HermitianForm>& rho) {
  const int n = s.dim();
  if (n > kRoydenMaxDim) {
    throw ResourceError("royden_sum_bruteforce: n = " + std::to_string(n) +
                        " exceeds the enumeration limit of " +
                        std::to_string(kRoydenMaxDim));
  }
  const RoydenFrame rf = royden_frame(s, h, g);
  const HermitianForm hf = in_frame(h, rf.frame.frame);
  HermitianForm rf_rho(n);
  if (rho) rf_rho = in_frame(*rho, rf.frame.frame);

  static const Complex kRoots[4] = {Complex(1, 0), Complex(0, 1),
                                    Complex(-1, 0), Complex(0, -1)};
  RoydenSums out;
  std::vector<int> digit(n, 0);
  Vector eta(n);
  const long long total = 1LL << (2 * n);
  for (long long a = 0; a < total; ++a) {
    for (int i = 0; i < n; ++i) eta(i) = kRoots[digit[i]];
    out.quartic_sum += rf.s.quartic(eta);
    const double hn = hf.quadratic(eta);
    out.metric_quartic_sum += hn * hn;
    if (rho) out.rho_sum += rf_rho.quadratic(eta);
    for (int i = 0; i < n; ++i) {
      if (++digit[i] < 4) break;
      digit[i] = 0;
    }
  }
  out.count = static_cast<double>(total);
  return out;
}

double royden_closed_form(const BihermitianForm& s, const HermitianForm& h,
                          const HermitianForm& g) {
  const RoydenFrame rf = royden_frame(s, h, g);
  const double count = std::ldexp(1.0, 2 * s.dim());
  return count * (2.0 * diag_double_trace(rf.s) - diag_quartic(rf.s));
}

double royden_identity_check(const BihermitianForm& s, const HermitianForm& h,
                             const HermitianForm& g) {
  const double brute = royden_sum_bruteforce(s, h, g).quartic_sum;
  const double closed = royden_closed_form(s, h, g);
  return std::abs(brute - closed) / (1.0 + std::abs(closed));
}

MixedTraceBounds mixed_trace_bounds(const BihermitianForm& s,
                                    const HermitianForm& h,
                                    const HermitianForm& g,
                                    const HermitianForm& rho,
                                    const CurvatureParams& params,
                                    double slack) {
  const int n = s.dim();
  params.validate(n);
  const RoydenFrame rf = royden_frame(s, h, g);
  const HermitianForm rho_f = in_frame(rho, rf.frame.frame);
  const RealVector& tau = rf.frame.tau;

  const double tr_h = tau.sum();
  const double h_sq = tau.squaredNorm();
  double tr_rho = 0.0;
  double h_dot_rho = 0.0;
  for (int i = 0; i < n; ++i) {
    tr_rho += rho_f(i, i).real();
    h_dot_rho += tau(i) * rho_f(i, i).real();
  }
  const double a = params.alpha;
  const double b = params.beta;
  const double l = params.lambda;

  MixedTraceBounds r;
  r.lhs = 2.0 * diag_double_trace(rf.s);
  r.rhs1 = (l * tr_h * tr_h - a * tr_h * tr_rho) / b + diag_quartic(rf.s);
  r.rhs2 = (l / b) * (tr_h * tr_h + h_sq) - (a / b) * tr_h * tr_rho -
           (a / b) * h_dot_rho;
  r.lhs_le_rhs1 = r.lhs <= r.rhs1 + slack;
  r.rhs1_le_rhs2 = r.rhs1 <= r.rhs2 + slack;
  return r;
}

double mixed_hypothesis_lambda(const BihermitianForm& s, const HermitianForm& h,
                               const HermitianForm& rho, double alpha,
                               double beta, std::uint64_t seed) {
  const BihermitianForm combined =
      beta * s + alpha * symmetric_product(h, rho);
  CertifyOptions opts;
  opts.seed = seed;
  return extremal_k_ricci(combined, h, 1, Direction::upper, opts)
      .extremal_value;
}

InterpolationResult interpolation_check(const BihermitianForm& s,
                                        const HermitianForm& h, int k,
                                        double sigma, const Vector& x,
                                        double slack) {
  const int n = s.dim();
  if (k < 1 || k > n) throw DomainError("interpolation_check: k out of range");
  const double nx = norm_sq(x, h);
  InterpolationResult r;
  r.lhs = (k - 1) * nx * ricci_trace(s, h).quadratic(x) +
          (n - k) * s.quartic(x);
  r.rhs = -(n - 1.0) * (k + 1.0) * sigma * nx * nx;
  r.holds = r.lhs <= r.rhs + slack;
  return r;
}

HermitianForm ric_scalar_matrix(const BihermitianForm& s,
                                const HermitianForm& h, int k, double sigma) {
  const int n = s.dim();
  if (k <= 1 || k > n) {
    throw DomainError("ric_scalar_matrix: requires 1 < k <= n");
  }
  const HermitianForm ric = ricci_trace(s, h);
  const double scal = ric.trace_wrt(h);
  const double coef = static_cast<double>(n) * k + n - k - 2;
  const double shift = static_cast<double>(n) * (n + 1) * (n - 1) * (k + 1) * sigma;
  return (coef * scal + shift) * h + static_cast<double>(n) * ric;
}

BergerResult berger_check(const BihermitianForm& s, const HermitianForm& h,
                          std::uint64_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) throw DomainError("berger_check: n_samples must be > 0");
  const int n = s.dim();
  const Matrix p = unitary_frame(h);
  const BihermitianForm sf = s.in_frame(p);
  Rng rng(seed);
  // Welford running mean and variance.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    Vector c = random_gaussian_vector(n, rng);
    const double nc = c.squaredNorm();
    if (nc == 0.0) continue;
    c /= std::sqrt(nc);
    const double value = sf.quartic(c);
    const double delta = value - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (value - mean);
  }
  const double factor = 0.5 * n * (n + 1);
  BergerResult r;
  r.mc_average = mean;
  r.scaled_average = factor * mean;
  r.scalar_value = scalar(s, h);
  const double var = n_samples > 1 ? m2 / static_cast<double>(n_samples - 1) : 0.0;
  r.std_error = factor * std::sqrt(var / static_cast<double>(n_samples));
  return r;
}

}  // namespace kricci
