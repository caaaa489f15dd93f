#include "kricci/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "kricci/detail/frame_ops.hpp"
#include "kricci/errors.hpp"

namespace kricci {

std::string to_string(Direction d) {
  return d == Direction::upper ? "upper" : "lower";
}

std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::satisfied: return "satisfied";
    case CertStatus::violated: return "violated";
    case CertStatus::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Direction direction_from_string(const std::string& s) {
  if (s == "upper") return Direction::upper;
  if (s == "lower") return Direction::lower;
  throw DomainError("unknown direction '" + s + "'");
}

CertStatus status_from_string(const std::string& s) {
  if (s == "satisfied") return CertStatus::satisfied;
  if (s == "violated") return CertStatus::violated;
  if (s == "inconclusive") return CertStatus::inconclusive;
  throw DomainError("unknown certificate status '" + s + "'");
}

namespace detail {

namespace {

// Y_p = sum_{ikl} a_i b_k conj(d_l) S_{i p k l}
Vector contract_y(const BihermitianForm& s, const Vector& a, const Vector& b,
                  const Vector& d) {
  const int n = s.dim();
  Vector y = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (a(i) == 0.0) continue;
    for (int k = 0; k < n; ++k) {
      const Complex ab = a(i) * b(k);
      if (ab == 0.0) continue;
      for (int l = 0; l < n; ++l) {
        const Complex abd = ab * std::conj(d(l));
        for (int p = 0; p < n; ++p) y(p) += abd * s(i, p, k, l);
      }
    }
  }
  return y;
}

}  // namespace

Vector frame_gradient(const BihermitianForm& s_frame, int k, const Vector& c,
                      Extreme which) {
  const FrameExtreme fe = frame_extreme(s_frame, k, c, which);
  // d/d conj(c) of S(c,c,c,c) + sum_a S(c, c, w_a, w_a) with
  // w_a = v_a - <v_a, c> c, evaluated at the optimal v_a.
  Vector dbar = 2.0 * contract_y(s_frame, c, c, c);
  for (int a = 0; a < k - 1; ++a) {
    const Vector v = fe.directions.col(a);
    dbar += contract_y(s_frame, c, v, v);
    dbar -= v * s_frame.eval(c, c, c, v);
  }
  Vector g = 2.0 * dbar;
  g -= c * c.dot(g);  // c^H g; tangent to the sphere and to the phase orbit
  return g;
}

}  // namespace detail

namespace {

struct StartResult {
  double value = -std::numeric_limits<double>::infinity();  // signed
  Vector c;
  int iterations = 0;
  bool converged = false;
};

Vector random_unit(int n, Rng& rng) {
  Vector c = random_gaussian_vector(n, rng);
  while (c.norm() == 0.0) c = random_gaussian_vector(n, rng);
  return c / c.norm();
}

Rng start_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), 0x6b726963u};
  return Rng(seq);
}

// Ascends sign * frame_extreme over the unit sphere from c0.
StartResult local_search(const BihermitianForm& sf, int k, Extreme which,
                         double sign, Vector c0, const CertifyOptions& opts,
                         double scale) {
  StartResult r;
  Vector c = std::move(c0);
  double f = sign * detail::frame_extreme(sf, k, c, which).value;
  double step = 1.0 / scale;
  // The value error near a maximum is quadratic in the gradient norm.
  const double gtol = 1e-7 * scale;
  int stagnant = 0;
  for (int it = 0; it < opts.max_iter; ++it) {
    r.iterations = it + 1;
    const Vector g = sign * detail::frame_gradient(sf, k, c, which);
    const double g2 = g.squaredNorm();
    if (std::sqrt(g2) <= gtol) {
      r.converged = true;
      break;
    }
    bool accepted = false;
    Vector c_try;
    double f_try = f;
    for (int bt = 0; bt < 60; ++bt) {
      c_try = c + step * g;
      c_try /= c_try.norm();
      f_try = sign * detail::frame_extreme(sf, k, c_try, which).value;
      if (f_try - f >= 1e-4 * step * g2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No ascent possible at working precision: numerically stationary.
      r.converged = true;
      break;
    }
    const double gain = f_try - f;
    c = c_try;
    f = f_try;
    step *= 2.0;
    stagnant = gain <= 1e-14 * (1.0 + std::abs(f)) ? stagnant + 1 : 0;
    if (stagnant >= 3) {
      r.converged = true;
      break;
    }
  }
  r.value = f;
  r.c = std::move(c);
  return r;
}

}  // namespace

Certificate extremal_k_ricci(const BihermitianForm& s, const HermitianForm& h,
                             int k, Direction direction,
                             const CertifyOptions& opts) {
  const int n = s.dim();
  if (k < 1 || k > n) throw DomainError("certify_k_ricci: k out of range");
  if (h.dim() != n) throw DomainError("certify_k_ricci: dimension mismatch");
  if (opts.n_starts < 1) throw DomainError("certify_k_ricci: n_starts < 1");

  const Matrix p = unitary_frame(h);
  const BihermitianForm sf = s.in_frame(p);
  const Extreme which =
      direction == Direction::upper ? Extreme::max : Extreme::min;
  const double sign = direction == Direction::upper ? 1.0 : -1.0;
  const double scale = std::max(1e-300, sf.max_abs() * n * n);

  // Pre-sweep: the best random directions seed half of the starts.
  std::vector<std::pair<double, Vector>> sweep;
  {
    Rng rng = start_rng(opts.seed, 0xffffffffu);
    sweep.reserve(std::max(0, opts.presweep));
    for (int i = 0; i < opts.presweep; ++i) {
      Vector c = random_unit(n, rng);
      const double f = sign * detail::frame_extreme(sf, k, c, which).value;
      sweep.emplace_back(f, std::move(c));
    }
    std::stable_sort(sweep.begin(), sweep.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
  }
  const int n_seeded =
      std::min<int>(static_cast<int>(sweep.size()), opts.n_starts / 2);

  std::vector<StartResult> results(opts.n_starts);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < opts.n_starts; ++i) {
    Vector c0;
    if (i < n_seeded) {
      c0 = sweep[i].second;
    } else {
      Rng rng = start_rng(opts.seed, static_cast<std::uint64_t>(i));
      c0 = random_unit(n, rng);
    }
    results[i] = local_search(sf, k, which, sign, std::move(c0), opts, scale);
  }

  // Deterministic reduction: best value, then lowest start index.
  int best = 0;
  Certificate cert;
  cert.k = k;
  cert.direction = direction;
  cert.tol = opts.tol;
  cert.n_starts = opts.n_starts;
  for (int i = 0; i < opts.n_starts; ++i) {
    cert.n_iterations += results[i].iterations;
    if (results[i].converged) ++cert.n_converged;
    if (results[i].value > results[best].value) best = i;
  }
  Vector c = results[best].c;
  double best_value = results[best].value;
  if (!sweep.empty() && sweep.front().first > best_value) {
    c = sweep.front().second;
    best_value = sweep.front().first;
  }

  const detail::FrameExtreme fe = detail::frame_extreme(sf, k, c, which);
  cert.extremal_value = fe.value;
  cert.witness = p * c;
  Matrix cols(n, k);
  cols.col(0) = cert.witness;
  if (k > 1) cols.rightCols(k - 1) = p * fe.directions;
  cert.subspace_witness = SubspaceBasis(std::move(cols), h, 1e-10);
  cert.status = cert.n_converged > 0 ? CertStatus::satisfied
                                     : CertStatus::inconclusive;
  return cert;
}

Certificate certify_k_ricci(const BihermitianForm& s, const HermitianForm& h,
                            int k, double bound, Direction direction,
                            const CertifyOptions& opts) {
  Certificate cert = extremal_k_ricci(s, h, k, direction, opts);
  cert.bound = bound;
  const double excess = direction == Direction::upper
                            ? cert.extremal_value - bound
                            : bound - cert.extremal_value;
  if (excess > opts.tol) {
    // Only report a violation the witness itself demonstrates.
    const double direct = reevaluate(cert, s, h);
    const double direct_excess =
        direction == Direction::upper ? direct - bound : bound - direct;
    if (direct_excess > opts.tol) {
      cert.status = CertStatus::violated;
    } else {
      cert.status = CertStatus::inconclusive;
    }
  }
  return cert;
}

double reevaluate(const Certificate& c, const BihermitianForm& s,
                  const HermitianForm& h) {
  return k_ricci_on(s, h, c.subspace_witness, c.witness);
}

}  // namespace kricci
