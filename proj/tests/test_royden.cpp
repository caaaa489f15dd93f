#include <gtest/gtest.h>

#include <cmath>

#include "kricci/certify.hpp"
#include "kricci/errors.hpp"
#include "kricci/random_forms.hpp"
#include "kricci/royden.hpp"
#include "oracles.hpp"

namespace {

using namespace kricci;

BihermitianForm model_form(const HermitianForm& h, double sigma) {
  return -sigma * b_form(h);
}

TEST(RoydenSum, OneDimensionalIsFourTimesEntry) {
  Tensor4 t(1);
  t(0, 0, 0, 0) = -1.7;
  const HermitianForm id = HermitianForm::identity(1);
  const RoydenSums r = royden_sum_bruteforce(symmetrize(t), id, id);
  EXPECT_NEAR(r.quartic_sum, 4.0 * -1.7, 1e-14);
  EXPECT_EQ(r.count, 4.0);
  EXPECT_LE(royden_identity_check(symmetrize(t), id, id), 1e-14);
}

TEST(RoydenSum, BFormCount) {
  for (int n = 1; n <= 4; ++n) {
    const HermitianForm id = HermitianForm::identity(n);
    const double expected = std::pow(4.0, n) * 2.0 * n * n;
    EXPECT_NEAR(royden_sum_bruteforce(b_form(id), id, id).quartic_sum, expected, 1e-9);
    EXPECT_NEAR(royden_closed_form(b_form(id), id, id), expected, 1e-9);
  }
}

TEST(RoydenSum, MetricQuarticSumIsSquaredTrace) {
  Rng rng(50);
  const HermitianForm g = random_metric(3, rng);
  const HermitianForm h = random_metric(3, rng);
  const double tr = h.trace_wrt(g);
  const RoydenSums r = royden_sum_bruteforce(random_bihermitian(3, rng), h, g);
  EXPECT_NEAR(r.metric_quartic_sum, 64.0 * tr * tr, 1e-10 * 64.0 * tr * tr);
}

TEST(RoydenSum, RhoSumIsScaledTrace) {
  Rng rng(51);
  const HermitianForm g = random_metric(3, rng);
  const HermitianForm h = random_metric(3, rng);
  const HermitianForm rho = random_hermitian(3, rng);
  const RoydenSums r = royden_sum_bruteforce(random_bihermitian(3, rng), h, g, rho);
  EXPECT_NEAR(r.rho_sum, 64.0 * rho.trace_wrt(g), 1e-10 * 64.0 * (1.0 + std::abs(rho.trace_wrt(g))));
}

TEST(RoydenSum, MatchesOracleEnumeration) {
  Rng rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    const BihermitianForm s = random_bihermitian(2, rng);
    const HermitianForm h = random_metric(2, rng);
    const HermitianForm g = random_metric(2, rng);
    const double ref = oracle::royden_enumeration(s, simultaneous_frame(g, h).frame);
    EXPECT_NEAR(royden_sum_bruteforce(s, h, g).quartic_sum, ref, 1e-10 * (1.0 + std::abs(ref)));
    EXPECT_LE(royden_identity_check(s, h, g), 1e-10);
  }
}

TEST(RoydenSum, TooLargeThrows) {
  const HermitianForm id = HermitianForm::identity(kRoydenMaxDim + 1);
  EXPECT_THROW(royden_sum_bruteforce(BihermitianForm(kRoydenMaxDim + 1), id, id), ResourceError);
}

TEST(RoydenIdentity, FrameCovariant) {
  Rng rng(53);
  const BihermitianForm s = random_bihermitian(3, rng);
  const HermitianForm h = random_metric(3, rng);
  const HermitianForm g = random_metric(3, rng);
  const Matrix p = random_unitary(3, rng);
  const double a = royden_closed_form(s, h, g);
  const double b = royden_closed_form(s.in_frame(p), in_frame(h, p), in_frame(g, p));
  EXPECT_NEAR(a, b, 1e-10 * (1.0 + std::abs(a)));
  EXPECT_LE(royden_identity_check(s.in_frame(p), in_frame(h, p), in_frame(g, p)), 1e-10);
}

TEST(MixedTrace, ModelFormExample) {
  const int n = 2;
  const HermitianForm id = HermitianForm::identity(n);
  CurvatureParams p;
  p.lambda = -(n + 3);
  const MixedTraceBounds b = mixed_trace_bounds(model_form(id, 1.0), id, id,
                                                HermitianForm::scaled_identity(n, -(n + 1)), p);
  EXPECT_NEAR(b.lhs, -12.0, 1e-12);
  EXPECT_TRUE(b.lhs_le_rhs1);
  EXPECT_TRUE(b.rhs1_le_rhs2);
}

TEST(MixedTrace, ZeroInputs) {
  const HermitianForm id = HermitianForm::identity(3);
  const MixedTraceBounds b = mixed_trace_bounds(BihermitianForm(3), id, id, HermitianForm(3), {});
  EXPECT_EQ(b.lhs, 0.0);
  EXPECT_NEAR(b.rhs1, 0.0, 1e-15);
  EXPECT_NEAR(b.rhs2, 0.0, 1e-15);
}

TEST(MixedTrace, LhsIsTwiceDoubleTrace) {
  Rng rng(54);
  const BihermitianForm s = random_bihermitian(3, rng);
  const HermitianForm h = random_metric(3, rng);
  const HermitianForm g = random_metric(3, rng);
  const MixedTraceBounds b = mixed_trace_bounds(s, h, g, HermitianForm(3), {});
  EXPECT_NEAR(b.lhs, 2.0 * oracle::scalar(s, g), 1e-10);
}

TEST(MixedTrace, ChainHoldsUnderCertifiedHypothesis) {
  Rng rng(55);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const BihermitianForm s = random_bihermitian(3, rng);
    const HermitianForm h = random_metric(3, rng);
    const HermitianForm g = random_metric(3, rng);
    const HermitianForm rho = random_hermitian(3, rng);
    CurvatureParams p;
    p.alpha = w(rng);
    p.beta = w(rng);
    p.lambda = mixed_hypothesis_lambda(s, h, rho, p.alpha, p.beta, 17 + trial) + 1e-9;
    const MixedTraceBounds b = mixed_trace_bounds(s, h, g, rho, p);
    EXPECT_LE(b.lhs, b.rhs1 + 1e-9);
    EXPECT_LE(b.rhs1, b.rhs2 + 1e-9);
  }
}

TEST(CurvatureParams, Validation) {
  CurvatureParams p;
  EXPECT_NO_THROW(p.validate(3));
  p.k = 4;
  EXPECT_THROW(p.validate(3), DomainError);
  p.k = 1;
  p.alpha = 0.0;
  EXPECT_THROW(p.validate(3), DomainError);
}

TEST(Interpolation, ModelFormEquality) {
  Rng rng(56);
  for (int n = 2; n <= 4; ++n) {
    const HermitianForm h = random_metric(n, rng);
    for (int k = 1; k <= n; ++k) {
      const Vector x = oracle::gaussian(n, rng);
      const InterpolationResult r = interpolation_check(model_form(h, 0.8), h, k, 0.8, x);
      EXPECT_NEAR(r.lhs, r.rhs, 1e-10 * (1.0 + std::abs(r.rhs)));
      EXPECT_TRUE(r.holds);
    }
  }
}

TEST(Interpolation, KOneReducesToHsc) {
  Rng rng(57);
  const BihermitianForm s = random_bihermitian(3, rng);
  const HermitianForm h = random_metric(3, rng);
  const Vector x = oracle::gaussian(3, rng);
  const double x2 = norm_sq(x, h);
  const InterpolationResult r = interpolation_check(s, h, 1, 0.3, x);
  EXPECT_NEAR(r.lhs, 2.0 * s.quartic(x), 1e-12 * (1.0 + std::abs(r.lhs)));
  EXPECT_NEAR(r.rhs, -2.0 * 2.0 * 0.3 * x2 * x2, 1e-12 * (1.0 + std::abs(r.rhs)));
}

TEST(Interpolation, HoldsOnCertifiedForms) {
  Rng rng(58);
  for (int trial = 0; trial < 10; ++trial) {
    const HermitianForm h = random_metric(3, rng);
    const double sigma = 0.5;
    const ConstrainedForm cf = generate_ric_k_upper(3, 2, -3.0 * sigma, h, rng);
    for (int j = 0; j < 5; ++j) {
      const InterpolationResult r =
          interpolation_check(cf.form, h, 2, sigma, oracle::gaussian(3, rng));
      EXPECT_LE(r.lhs, r.rhs + 1e-8);
    }
  }
}

TEST(RicScalar, ModelFormIsZero) {
  const HermitianForm id = HermitianForm::identity(3);
  const HermitianForm d = ric_scalar_matrix(model_form(id, 1.0), id, 2, 1.0);
  EXPECT_LE(d.entries().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(RicScalar, ZeroFormZeroSigma) {
  const HermitianForm id = HermitianForm::identity(3);
  EXPECT_EQ(ric_scalar_matrix(BihermitianForm(3), id, 2, 0.0).entries().cwiseAbs().maxCoeff(),
            0.0);
}

TEST(RicScalar, KOneThrows) {
  const HermitianForm id = HermitianForm::identity(3);
  EXPECT_THROW(ric_scalar_matrix(BihermitianForm(3), id, 1, 0.0), DomainError);
}

TEST(RicScalar, NonPositiveOnCertifiedForms) {
  Rng rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const HermitianForm h = random_metric(3, rng);
    const double sigma = 0.25;
    const ConstrainedForm cf = generate_ric_k_upper(3, 2, -3.0 * sigma, h, rng);
    EXPECT_LE(ric_scalar_matrix(cf.form, h, 2, sigma).max_eigenvalue(), 1e-8);
  }
}

TEST(Berger, ModelFormHasZeroVariance) {
  Rng rng(60);
  const HermitianForm h = random_metric(3, rng);
  const BergerResult b = berger_check(model_form(h, 1.0), h, 1000, 5);
  EXPECT_NEAR(b.scaled_average, -12.0, 1e-10);
  EXPECT_NEAR(b.scalar_value, -12.0, 1e-10);
  EXPECT_LE(b.std_error, 1e-10);
}

TEST(Berger, ZeroForm) {
  const HermitianForm id = HermitianForm::identity(2);
  const BergerResult b = berger_check(BihermitianForm(2), id, 100, 1);
  EXPECT_EQ(b.scaled_average, 0.0);
  EXPECT_EQ(b.scalar_value, 0.0);
}

TEST(Berger, ZeroSamplesThrows) {
  const HermitianForm id = HermitianForm::identity(2);
  EXPECT_THROW(berger_check(BihermitianForm(2), id, 0, 1), DomainError);
}

TEST(Berger, RandomFormWithinErrorBars) {
  Rng rng(61);
  const BihermitianForm s = random_bihermitian(3, rng);
  const HermitianForm h = random_metric(3, rng);
  const BergerResult b = berger_check(s, h, 200000, 11);
  EXPECT_LE(std::abs(b.scaled_average - b.scalar_value), 4.0 * b.std_error);
}

}  // namespace
