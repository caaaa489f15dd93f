#include <gtest/gtest.h>

#include "kricci/bihermitian.hpp"
#include "kricci/errors.hpp"
#include "oracles.hpp"

namespace {

using namespace kricci;

double max_entry_distance(const BihermitianForm& a, const BihermitianForm& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.tensor().data().size(); ++i) {
    d = std::max(d, std::abs(a.tensor().data()[i] - b.tensor().data()[i]));
  }
  return d;
}

TEST(HermitianForm, ConjugateSymmetryIsExact) {
  Rng rng(1);
  const Matrix m = random_gaussian_matrix(4, 4, rng);
  const HermitianForm a = HermitianForm::hermitian_part(m);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(a(i, i).imag(), 0.0);
    for (int j = 0; j < 4; ++j) EXPECT_EQ(a(j, i), std::conj(a(i, j)));
  }
}

TEST(HermitianForm, FromEntriesRejectsNonHermitian) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(HermitianForm::from_entries(m), DomainError);
}

TEST(HermitianForm, RandomMetricIsPositive) {
  Rng rng(2);
  for (int n = 1; n <= 6; ++n) EXPECT_GT(random_metric(n, rng).min_eigenvalue(), 0.0);
}

TEST(HermitianForm, TraceMatchesOracle) {
  Rng rng(3);
  const HermitianForm h = random_metric(3, rng);
  const HermitianForm a = random_hermitian(3, rng);
  const Matrix g = oracle::contra(h);
  Complex acc = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += g(i, j) * a(i, j);
  EXPECT_NEAR(a.trace_wrt(h), acc.real(), 1e-12);
}

TEST(HermitianForm, UnitaryFrameIsOrthonormal) {
  Rng rng(4);
  const HermitianForm h = random_metric(4, rng);
  const Matrix p = unitary_frame(h);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      EXPECT_NEAR(std::abs(oracle::form2(h.entries(), p.col(a), p.col(b)) - (a == b ? 1.0 : 0.0)),
                  0.0, 1e-12);
}

TEST(HermitianForm, SimultaneousFrameDiagonalizes) {
  Rng rng(5);
  const HermitianForm g = random_metric(3, rng);
  const HermitianForm h = random_metric(3, rng);
  const SimultaneousFrame f = simultaneous_frame(g, h);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      EXPECT_NEAR(std::abs(oracle::form2(g.entries(), f.frame.col(a), f.frame.col(b)) -
                           (a == b ? 1.0 : 0.0)),
                  0.0, 1e-12);
      const Complex hv = oracle::form2(h.entries(), f.frame.col(a), f.frame.col(b));
      EXPECT_NEAR(std::abs(hv - (a == b ? f.tau(a) : 0.0)), 0.0, 1e-12);
    }
}

TEST(Symmetries, SymmetrizedRandomTensorValidates) {
  Rng rng(10);
  for (int n = 1; n <= 4; ++n) {
    const BihermitianForm s = random_bihermitian(n, rng);
    const SymmetryReport r = validate_symmetries(s.tensor(), 1e-14);
    EXPECT_TRUE(r.ok);
    EXPECT_LE(r.max_violation, 1e-14);
  }
}

TEST(Symmetries, PerturbedEntryIsDetected) {
  Tensor4 t = b_form(HermitianForm::identity(2)).tensor();
  t(0, 0, 1, 1) += 1.0;
  const SymmetryReport r = validate_symmetries(t, 1e-12);
  EXPECT_FALSE(r.ok);
  EXPECT_GE(r.max_violation, 0.5);
}

TEST(Symmetries, BFormOfIdentityValidates) {
  EXPECT_TRUE(validate_symmetries(b_form(HermitianForm::identity(3)).tensor(), 1e-15).ok);
}

TEST(Symmetries, DerivedRelationHolds) {
  Rng rng(11);
  const BihermitianForm s = random_bihermitian(3, rng);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          EXPECT_NEAR(std::abs(s(i, j, k, l) - s(i, l, k, j)), 0.0, 1e-15);
}

TEST(Symmetrize, IsIdempotent) {
  Rng rng(12);
  const BihermitianForm s = symmetrize(random_tensor(3, rng));
  const BihermitianForm s2 = symmetrize(s.tensor());
  EXPECT_LE(max_entry_distance(s, s2), 1e-15);
}

TEST(Symmetrize, OneDimensionalKeepsRealPart) {
  Tensor4 t(1);
  t(0, 0, 0, 0) = Complex(2.0, 3.0);
  const BihermitianForm s = symmetrize(t);
  EXPECT_EQ(s(0, 0, 0, 0), Complex(2.0, 0.0));
}

TEST(Symmetrize, QuarticIsReal) {
  Rng rng(13);
  const BihermitianForm s = random_bihermitian(4, rng);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = oracle::gaussian(4, rng);
    EXPECT_NEAR(oracle::form4(s, x, x, x, x).imag(), 0.0, 1e-12);
    EXPECT_NEAR(s.quartic(x), oracle::quartic(s, x), 1e-12);
  }
}

TEST(FromSymmetric, RejectsAsymmetricInput) {
  Rng rng(14);
  EXPECT_THROW(BihermitianForm::from_symmetric(random_tensor(2, rng)), DomainError);
}

TEST(BForm, IdentityEntries) {
  const BihermitianForm b = b_form(HermitianForm::identity(2));
  EXPECT_EQ(b(0, 0, 1, 1), Complex(1.0));
  EXPECT_EQ(b(0, 1, 1, 0), Complex(1.0));
  EXPECT_EQ(b(0, 0, 0, 0), Complex(2.0));
  EXPECT_EQ(b(0, 1, 0, 1), Complex(0.0));
}

TEST(BForm, MatchesDefinitionForRandomMetric) {
  Rng rng(15);
  const HermitianForm h = random_metric(3, rng);
  const BihermitianForm b = b_form(h);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          EXPECT_NEAR(std::abs(b(i, j, k, l) - oracle::b_entry(h, i, j, k, l)), 0.0, 1e-14);
}

TEST(SymmetricProduct, QuarticIsProduct) {
  Rng rng(16);
  const HermitianForm a = random_hermitian(3, rng);
  const HermitianForm b = random_hermitian(3, rng);
  const BihermitianForm c = symmetric_product(a, b);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector x = oracle::gaussian(3, rng);
    EXPECT_NEAR(c.quartic(x), oracle::norm_sq(a, x) * oracle::norm_sq(b, x), 1e-10);
  }
}

TEST(InFrame, MatchesOracleTransform) {
  Rng rng(17);
  const BihermitianForm s = random_bihermitian(3, rng);
  const Matrix p = random_gaussian_matrix(3, 3, rng);
  const BihermitianForm t = s.in_frame(p);
  const std::vector<Complex> ref = oracle::transform(s, p);
  for (std::size_t i = 0; i < ref.size(); ++i)
    EXPECT_NEAR(std::abs(t.tensor().data()[i] - ref[i]), 0.0, 1e-11);
}

}  // namespace
