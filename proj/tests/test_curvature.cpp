#include <gtest/gtest.h>

#include "kricci/curvature.hpp"
#include "kricci/errors.hpp"
#include "oracles.hpp"

namespace {

using namespace kricci;

BihermitianForm model_form(const HermitianForm& h, double sigma) {
  BihermitianForm s = b_form(h);
  s *= -sigma;
  return s;
}

/// Random k-dim subspace containing x, via the oracle Gram-Schmidt.
SubspaceBasis subspace_through(const Vector& x, int k, const HermitianForm& h, Rng& rng) {
  Matrix cols(h.dim(), k);
  cols.col(0) = x;
  for (int a = 1; a < k; ++a) cols.col(a) = oracle::gaussian(h.dim(), rng);
  return SubspaceBasis(oracle::gram_schmidt(cols, h), h);
}

TEST(Hsc, ModelFormIsMinusTwoSigma) {
  Rng rng(20);
  for (double sigma : {0.5, 1.0, 2.0}) {
    const HermitianForm h = random_metric(3, rng);
    const Vector x = oracle::gaussian(3, rng);
    EXPECT_NEAR(hsc(model_form(h, sigma), h, x), -2.0 * sigma, 1e-12);
  }
}

TEST(Hsc, BFormIsTwo) {
  Rng rng(21);
  const HermitianForm h = HermitianForm::identity(4);
  EXPECT_NEAR(hsc(b_form(h), h, oracle::unit_vector(h, rng)), 2.0, 1e-12);
}

TEST(Hsc, ScaleInvariant) {
  Rng rng(22);
  const BihermitianForm s = random_bihermitian(3, rng);
  const HermitianForm h = random_metric(3, rng);
  const Vector x = oracle::gaussian(3, rng);
  EXPECT_NEAR(hsc(s, h, 2.0 * x), hsc(s, h, x), 1e-12);
  EXPECT_NEAR(hsc(s, h, Complex(0.3, -1.1) * x), hsc(s, h, x), 1e-12);
}

TEST(Hsc, OneDimensional) {
  Tensor4 t(1);
  t(0, 0, 0, 0) = 5.0;
  Vector e(1);
  e(0) = 1.0;
  EXPECT_NEAR(hsc(symmetrize(t), HermitianForm::identity(1), e), 5.0, 1e-15);
}

TEST(Hsc, ZeroVectorThrows) {
  const HermitianForm h = HermitianForm::identity(2);
  EXPECT_THROW(hsc(b_form(h), h, Vector::Zero(2)), DomainError);
}

TEST(Ricci, ModelFormIdentityMetric) {
  const HermitianForm h = HermitianForm::identity(3);
  const HermitianForm r = ricci_trace(model_form(h, 1.0), h);
  EXPECT_LE((r.entries() + 4.0 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-14);
  const HermitianForm rb = ricci_trace(b_form(h), h);
  EXPECT_LE((rb.entries() - 4.0 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Ricci, MatchesOracleAndFrameRoute) {
  Rng rng(23);
  for (int n = 1; n <= 4; ++n) {
    const BihermitianForm s = random_bihermitian(n, rng);
    const HermitianForm h = random_metric(n, rng);
    const Matrix ref = oracle::ricci(s, h);
    EXPECT_LE((ricci_trace(s, h).entries() - ref).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((ricci_trace_frame(s, h).entries() - ref).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Ricci, OneDimensional) {
  Tensor4 t(1);
  t(0, 0, 0, 0) = 3.0;
  const HermitianForm h = HermitianForm::scaled_identity(1, 2.0);
  EXPECT_NEAR(ricci_trace(symmetrize(t), h)(0, 0).real(), 1.5, 1e-15);
}

TEST(Ricci, SingularMetricThrows) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  const HermitianForm h = HermitianForm::from_entries(m);
  EXPECT_THROW(ricci_trace(b_form(HermitianForm::identity(2)), h), DomainError);
}

TEST(Scalar, ModelFormValue) {
  Rng rng(24);
  EXPECT_NEAR(scalar(model_form(HermitianForm::identity(3), 1.0), HermitianForm::identity(3)),
              -12.0, 1e-13);
  for (int n = 2; n <= 4; ++n) {
    const HermitianForm h = random_metric(n, rng);
    EXPECT_NEAR(scalar(model_form(h, 0.5), h), -0.5 * n * (n + 1), 1e-11);
  }
}

TEST(Scalar, ZeroForm) {
  EXPECT_EQ(scalar(BihermitianForm(3), HermitianForm::identity(3)), 0.0);
}

TEST(Scalar, TraceOfRicciMatchesOracle) {
  Rng rng(25);
  const BihermitianForm s = random_bihermitian(3, rng);
  const HermitianForm h = random_metric(3, rng);
  EXPECT_NEAR(scalar(s, h), ricci_trace(s, h).trace_wrt(h), 1e-12);
  EXPECT_NEAR(scalar(s, h), oracle::scalar(s, h), 1e-11);
}

TEST(FrameCovariance, InvariantsUnderUnitaryChange) {
  Rng rng(26);
  for (int trial = 0; trial < 5; ++trial) {
    const BihermitianForm s = random_bihermitian(3, rng);
    const HermitianForm h = random_metric(3, rng);
    const Matrix p = random_unitary(3, rng);
    const BihermitianForm s2 = s.in_frame(p);
    const HermitianForm h2 = in_frame(h, p);
    const Vector x = oracle::unit_vector(h, rng);
    const Vector x2 = p.inverse() * x;
    EXPECT_NEAR(scalar(s2, h2), scalar(s, h), 1e-10);
    EXPECT_NEAR(hsc(s2, h2, x2), hsc(s, h, x), 1e-10);
    for (Extreme w : {Extreme::max, Extreme::min}) {
      EXPECT_NEAR(k_ricci_extreme_at(s2, h2, 2, x2, w).value,
                  k_ricci_extreme_at(s, h, 2, x, w).value, 1e-10);
    }
  }
}

TEST(KRicciOn, ModelFormIsConstant) {
  Rng rng(27);
  const HermitianForm h = random_metric(4, rng);
  for (int k = 1; k <= 4; ++k) {
    const Vector x = oracle::unit_vector(h, rng);
    const SubspaceBasis u = subspace_through(x, k, h, rng);
    EXPECT_NEAR(k_ricci_on(model_form(h, 1.5), h, u, x), -(k + 1) * 1.5, 1e-12);
  }
}

TEST(KRicciOn, FullSpaceIsRicci) {
  Rng rng(28);
  const BihermitianForm s = random_bihermitian(3, rng);
  const HermitianForm h = random_metric(3, rng);
  const Vector x = oracle::unit_vector(h, rng);
  const SubspaceBasis u = subspace_through(x, 3, h, rng);
  EXPECT_NEAR(k_ricci_on(s, h, u, x), ricci_trace(s, h).quadratic(x), 1e-12);
}

TEST(KRicciOn, LineIsHsc) {
  Rng rng(29);
  const BihermitianForm s = random_bihermitian(3, rng);
  const HermitianForm h = random_metric(3, rng);
  const Vector x = oracle::unit_vector(h, rng);
  const SubspaceBasis u = subspace_through(x, 1, h, rng);
  EXPECT_NEAR(k_ricci_on(s, h, u, x), hsc(s, h, x), 1e-12);
}

TEST(KRicciOn, MatchesOracle) {
  Rng rng(30);
  const BihermitianForm s = random_bihermitian(4, rng);
  const HermitianForm h = random_metric(4, rng);
  const Vector x = oracle::unit_vector(h, rng);
  const SubspaceBasis u = subspace_through(x, 3, h, rng);
  EXPECT_NEAR(k_ricci_on(s, h, u, x), oracle::k_ricci(s, u.columns(), x), 1e-12);
}

TEST(KRicciOn, VectorOutsideSubspaceThrows) {
  const HermitianForm h = HermitianForm::identity(3);
  Matrix cols = Matrix::Zero(3, 1);
  cols(0, 0) = 1.0;
  const SubspaceBasis u(cols, h);
  Vector x = Vector::Zero(3);
  x(1) = 1.0;
  EXPECT_THROW(k_ricci_on(b_form(h), h, u, x), DomainError);
}

TEST(SubspaceBasis, NonOrthonormalColumnsThrow) {
  const HermitianForm h = HermitianForm::identity(2);
  Matrix cols = Matrix::Identity(2, 2);
  cols(0, 1) = 0.5;
  EXPECT_THROW(SubspaceBasis(cols, h), DomainError);
}

TEST(SubspaceBasis, OrthonormalizeRejectsRankDeficiency) {
  const HermitianForm h = HermitianForm::identity(3);
  Matrix cols = Matrix::Zero(3, 2);
  cols(0, 0) = 1.0;
  cols(0, 1) = 2.0;
  EXPECT_THROW(SubspaceBasis::orthonormalize(cols, h), DomainError);
}

TEST(KRicciExtreme, ModelFormMaxEqualsMin) {
  Rng rng(31);
  const HermitianForm h = HermitianForm::identity(3);
  const Vector x = oracle::unit_vector(h, rng);
  const BihermitianForm s = model_form(h, 1.0);
  EXPECT_NEAR(k_ricci_extreme_at(s, h, 2, x, Extreme::max).value, -3.0, 1e-12);
  EXPECT_NEAR(k_ricci_extreme_at(s, h, 2, x, Extreme::min).value, -3.0, 1e-12);
}

TEST(KRicciExtreme, KOneIsHsc) {
  Rng rng(32);
  const BihermitianForm s = random_bihermitian(3, rng);
  const HermitianForm h = random_metric(3, rng);
  const Vector x = oracle::unit_vector(h, rng);
  const KRicciExtreme e = k_ricci_extreme_at(s, h, 1, x, Extreme::max);
  EXPECT_NEAR(e.value, hsc(s, h, x), 1e-12);
  EXPECT_EQ(e.subspace.k(), 1);
  EXPECT_LE(e.subspace.distance(x), 1e-12);
}

TEST(KRicciExtreme, SubspaceAttainsValue) {
  Rng rng(33);
  const BihermitianForm s = random_bihermitian(4, rng);
  const HermitianForm h = random_metric(4, rng);
  const Vector x = oracle::unit_vector(h, rng);
  for (Extreme w : {Extreme::max, Extreme::min}) {
    const KRicciExtreme e = k_ricci_extreme_at(s, h, 3, x, w);
    EXPECT_NEAR(oracle::k_ricci(s, e.subspace.columns(), x), e.value, 1e-11);
  }
}

TEST(KRicciExtreme, DominatesRandomSubspaces) {
  Rng rng(34);
  const BihermitianForm s = random_bihermitian(3, rng);
  const HermitianForm h = random_metric(3, rng);
  const Vector x = oracle::unit_vector(h, rng);
  const double hi = k_ricci_extreme_at(s, h, 2, x, Extreme::max).value;
  const double lo = k_ricci_extreme_at(s, h, 2, x, Extreme::min).value;
  for (int trial = 0; trial < 10000; ++trial) {
    Matrix cols(3, 2);
    cols.col(0) = x;
    cols.col(1) = oracle::gaussian(3, rng);
    const Matrix u = oracle::gram_schmidt(cols, h);
    const double v = oracle::k_ricci(s, u, x);
    ASSERT_LE(v, hi + 1e-12);
    ASSERT_GE(v, lo - 1e-12);
  }
}

TEST(KRicciExtreme, KOutOfRangeThrows) {
  const HermitianForm h = HermitianForm::identity(2);
  Vector x = Vector::Zero(2);
  x(0) = 1.0;
  EXPECT_THROW(k_ricci_extreme_at(b_form(h), h, 0, x, Extreme::max), DomainError);
  EXPECT_THROW(k_ricci_extreme_at(b_form(h), h, 3, x, Extreme::max), DomainError);
}

TEST(RicPlus, ModelForm) {
  Rng rng(35);
  const HermitianForm h = random_metric(3, rng);
  EXPECT_NEAR(ric_plus(model_form(h, 0.7), h, oracle::unit_vector(h, rng)), -6.0 * 0.7, 1e-12);
}

TEST(RicPlus, ZeroFormAndScaling) {
  Rng rng(36);
  const HermitianForm h = random_metric(3, rng);
  const Vector x = oracle::gaussian(3, rng);
  EXPECT_EQ(ric_plus(BihermitianForm(3), h, x), 0.0);
  const BihermitianForm s = random_bihermitian(3, rng);
  const Complex c(1.3, 0.4);
  EXPECT_NEAR(ric_plus(s, h, c * x), std::norm(c) * ric_plus(s, h, x), 1e-11);
  EXPECT_THROW(ric_plus(s, h, Vector::Zero(3)), DomainError);
}

TEST(ShiftSigma, ZeroAndCancellation) {
  Rng rng(37);
  const HermitianForm h = random_metric(3, rng);
  const BihermitianForm s = random_bihermitian(3, rng);
  const BihermitianForm same = shift_sigma(s, h, 0.0);
  for (std::size_t i = 0; i < s.tensor().data().size(); ++i)
    EXPECT_EQ(same.tensor().data()[i], s.tensor().data()[i]);
  EXPECT_LE(shift_sigma(model_form(h, 1.25), h, 1.25).max_abs(), 1e-14);
}

TEST(ShiftSigma, KRicciShiftsByKPlusOneSigma) {
  Rng rng(38);
  const BihermitianForm s = random_bihermitian(3, rng);
  const HermitianForm h = random_metric(3, rng);
  const double sigma = 0.37;
  const BihermitianForm t = shift_sigma(s, h, sigma);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = oracle::unit_vector(h, rng);
    for (int k = 1; k <= 3; ++k) {
      EXPECT_NEAR(k_ricci_extreme_at(t, h, k, x, Extreme::max).value,
                  k_ricci_extreme_at(s, h, k, x, Extreme::max).value + (k + 1) * sigma, 1e-12);
      const SubspaceBasis u = subspace_through(x, k, h, rng);
      EXPECT_NEAR(k_ricci_on(t, h, u, x), k_ricci_on(s, h, u, x) + (k + 1) * sigma, 1e-12);
    }
    EXPECT_NEAR(hsc(t, h, x), hsc(s, h, x) + 2.0 * sigma, 1e-12);
  }
}

}  // namespace
