#pragma once

#include <cstdint>
#include <optional>

#include "kricci/bihermitian.hpp"
#include "kricci/linalg.hpp"

namespace kricci {

/// alpha, beta > 0 weight the mixed inequality
///   alpha |X|^2 rho(X,X) + beta S(X,X,X,X) <= lambda |X|^4;
/// sigma and k parametrize the k-Ricci bound Ric_k <= -(k+1) sigma.
struct CurvatureParams {
  double alpha = 1.0;
  double beta = 1.0;
  double lambda = 0.0;
  double sigma = 0.0;
  int k = 1;

  /// DomainError unless alpha > 0, beta > 0 and 1 <= k <= n.
  void validate(int n) const;
};

/// Sums over the 4^n vectors eta_A = sum_i eps_i E_i, eps in {1, i, -1, -i},
/// with {E_i} g-unitary and h-diagonal.
struct RoydenSums {
  double quartic_sum = 0.0;         // sum_A S(eta, eta, eta, eta)
  double metric_quartic_sum = 0.0;  // sum_A |eta|_h^4
  double rho_sum = 0.0;             // sum_A rho(eta, eta)
  double count = 0.0;               // 4^n
};

inline constexpr int kRoydenMaxDim = 8;

/// ResourceError for n > 8.
RoydenSums royden_sum_bruteforce(const BihermitianForm& s,
                                 const HermitianForm& h,
                                 const HermitianForm& g,
                                 const std::optional<HermitianForm>& rho = {});

/// Closed-form value 4^n (2 sum_ik S_iikk - sum_i S_iiii) in the same frame.
double royden_closed_form(const BihermitianForm& s, const HermitianForm& h,
                          const HermitianForm& g);

/// |brute force - closed form| / (1 + |closed form|).
double royden_identity_check(const BihermitianForm& s, const HermitianForm& h,
                             const HermitianForm& g);

struct MixedTraceBounds {
  double lhs = 0.0;   // 2 g^{ij} g^{kl} S_ijkl
  double rhs1 = 0.0;
  double rhs2 = 0.0;
  bool lhs_le_rhs1 = false;
  bool rhs1_le_rhs2 = false;
};

/// Both upper bounds for the double g-trace of S under the mixed hypothesis.
/// `slack` is the tolerance used for the two flags.
MixedTraceBounds mixed_trace_bounds(const BihermitianForm& s,
                                    const HermitianForm& h,
                                    const HermitianForm& g,
                                    const HermitianForm& rho,
                                    const CurvatureParams& params,
                                    double slack = 1e-9);

/// Smallest lambda for which the mixed hypothesis holds: the maximum over
/// the h-unit sphere of alpha rho(X,X) + beta S(X,X,X,X), located by the
/// k = 1 certifier.
double mixed_hypothesis_lambda(const BihermitianForm& s, const HermitianForm& h,
                               const HermitianForm& rho, double alpha,
                               double beta, std::uint64_t seed = 0);

struct InterpolationResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// lhs = (k-1)|X|^2 Ric(X,X) + (n-k) S(X,X,X,X),
/// rhs = -(n-1)(k+1) sigma |X|^4.
InterpolationResult interpolation_check(const BihermitianForm& s,
                                        const HermitianForm& h, int k,
                                        double sigma, const Vector& x,
                                        double slack = 1e-8);

/// D = (nk+n-k-2) Scal h + n Ric + n(n+1)(n-1)(k+1) sigma h, which is
/// non-positive when Ric_k <= -(k+1) sigma.  DomainError for k <= 1.
HermitianForm ric_scalar_matrix(const BihermitianForm& s,
                                const HermitianForm& h, int k, double sigma);

struct BergerResult {
  double mc_average = 0.0;    // mean of H over the unit sphere
  double scaled_average = 0.0;  // n(n+1)/2 * mc_average
  double scalar_value = 0.0;
  double std_error = 0.0;     // standard error of scaled_average
};

/// Monte Carlo check of Scal = n(n+1)/2 * average of H.
BergerResult berger_check(const BihermitianForm& s, const HermitianForm& h,
                          std::uint64_t n_samples, std::uint64_t seed);

}  // namespace kricci
