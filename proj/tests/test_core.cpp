#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "genecon/core.hpp"
#include "genecon/error.hpp"
#include "support.hpp"

using namespace genecon;
using genecon::testing::Gen;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no genecon::Error thrown";
  return ErrorCode::InvalidArgument;
}

// Closed-form eigenvalues of a symmetric 3x3 matrix from its characteristic
// polynomial (trigonometric solution of the depressed cubic), descending.
std::array<double, 3> cubic_eigenvalues(const Matrix& a) {
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  const double q = a.trace() / 3.0;
  if (p1 == 0.0) {
    std::array<double, 3> d{a(0, 0), a(1, 1), a(2, 2)};
    std::sort(d.begin(), d.end(), std::greater<>());
    return d;
  }
  const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                    (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  const Matrix b = (a - q * Matrix::Identity(3, 3)) / p;
  const double r = std::clamp(b.determinant() / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  return {e1, 3.0 * q - e1 - e3, e3};
}

std::array<double, 2> quadratic_eigenvalues(const Matrix& a) {
  const double mean = 0.5 * (a(0, 0) + a(1, 1));
  const double half = 0.5 * (a(0, 0) - a(1, 1));
  const double r = std::hypot(half, a(0, 1));
  return {mean + r, mean - r};
}

}  // namespace

TEST(TraitGrid, AcceptsIncreasingPoints) {
  TraitGrid g({11, 17, 23, 29, 35, 40});
  EXPECT_EQ(g.size(), 6);
  EXPECT_EQ(g.gaps(), (std::vector<double>{6, 6, 6, 6, 5}));
  EXPECT_EQ(g.min_gap(), 5.0);
  EXPECT_EQ(g[5], 40.0);
}

TEST(TraitGrid, RejectsBadPoints) {
  EXPECT_EQ(code_of([] { TraitGrid({1.0}); }), ErrorCode::InvalidGrid);
  EXPECT_EQ(code_of([] { TraitGrid({1.0, 1.0, 2.0}); }), ErrorCode::InvalidGrid);
  EXPECT_EQ(code_of([] { TraitGrid({2.0, 1.0}); }), ErrorCode::InvalidGrid);
  EXPECT_EQ(code_of([] { TraitGrid({0.0, std::nan("")}); }), ErrorCode::InvalidGrid);
}

TEST(SymMatrix, SymmetrizesWithinTolerance) {
  Matrix m(2, 2);
  m << 1.0, 2.0, 2.0 + 1e-12, 3.0;
  SymMatrix s(m);
  EXPECT_EQ(s(0, 1), s(1, 0));
  EXPECT_NEAR(s(0, 1), 2.0, 1e-12);
}

TEST(SymMatrix, RejectsAsymmetricOrNonSquare) {
  Matrix m(2, 2);
  m << 1.0, 2.0, 2.1, 3.0;
  EXPECT_EQ(code_of([&] { SymMatrix{m}; }), ErrorCode::InvalidMatrix);
  EXPECT_EQ(code_of([] { SymMatrix{Matrix::Zero(2, 3)}; }), ErrorCode::InvalidMatrix);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = INFINITY;
  EXPECT_EQ(code_of([&] { SymMatrix{bad}; }), ErrorCode::InvalidMatrix);
}

TEST(SymmetricEigen, TwoByTwoHandExample) {
  Matrix m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  const auto eig = symmetric_eigen(SymMatrix(m));
  EXPECT_NEAR(eig.values(0), 3.0, 1e-14);
  EXPECT_NEAR(eig.values(1), 1.0, 1e-14);
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(eig.vectors(0, 0), s, 1e-14);
  EXPECT_NEAR(eig.vectors(1, 0), s, 1e-14);
  EXPECT_NEAR(eig.vectors(0, 1), s, 1e-14);
  EXPECT_NEAR(eig.vectors(1, 1), -s, 1e-14);
  EXPECT_FALSE(eig.degenerate);
}

TEST(SymmetricEigen, DiagonalAndIdentity) {
  const auto eig = symmetric_eigen(SymMatrix::diagonal((Vector(4) << 0.5, 3.0, -1.0, 2.0).finished()));
  EXPECT_EQ(eig.values, (Vector(4) << 3.0, 2.0, 0.5, -1.0).finished());
  const auto id = symmetric_eigen(SymMatrix::identity(3));
  EXPECT_TRUE(id.degenerate);
  EXPECT_EQ(id.vectors, Matrix::Identity(3, 3));
}

TEST(SymmetricEigen, MatchesCharacteristicPolynomialForSmallK) {
  Gen gen(101);
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix a2 = gen.symmetric(2);
    const auto e2 = symmetric_eigen(SymMatrix(a2)).values;
    const auto r2 = quadratic_eigenvalues(a2);
    EXPECT_NEAR(e2(0), r2[0], 1e-12);
    EXPECT_NEAR(e2(1), r2[1], 1e-12);

    const Matrix a3 = gen.symmetric(3);
    const auto e3 = symmetric_eigen(SymMatrix(a3)).values;
    const auto r3 = cubic_eigenvalues(a3);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(e3(i), r3[static_cast<std::size_t>(i)], 1e-10);
  }
}

TEST(SymmetricEigen, PropertyReconstructionAndOrthonormality) {
  Gen gen(7);
  for (int trial = 0; trial < 300; ++trial) {
    const Index k = gen.index(1, 10);
    const Matrix a = gen.symmetric(k);
    const auto eig = symmetric_eigen(SymMatrix(a));
    const double scale = std::max(1.0, a.norm());
    EXPECT_LE((eig.reconstruct() - a).norm(), 1e-12 * scale * k);
    EXPECT_LE((eig.vectors.transpose() * eig.vectors - Matrix::Identity(k, k)).norm(), 1e-12 * k);
    for (Index i = 0; i + 1 < k; ++i) EXPECT_GE(eig.values(i), eig.values(i + 1));
    // Independent route: Eigen's own solver on the same input.
    Eigen::SelfAdjointEigenSolver<Matrix> ref(a);
    for (Index i = 0; i < k; ++i) EXPECT_NEAR(eig.values(i), ref.eigenvalues()(k - 1 - i), 1e-11 * scale);
  }
}

TEST(SymmetricEigen, SignConventionFirstLargeComponentPositive) {
  Gen gen(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto eig = symmetric_eigen(SymMatrix(gen.symmetric(5)));
    for (Index c = 0; c < 5; ++c) {
      for (Index r = 0; r < 5; ++r) {
        if (std::abs(eig.vectors(r, c)) > 1e-8) {
          EXPECT_GT(eig.vectors(r, c), 0.0);
          break;
        }
      }
    }
  }
}

TEST(SymmetricEigen, DeterministicAcrossCalls) {
  Gen gen(9);
  const SymMatrix m(gen.symmetric(6));
  const auto a = symmetric_eigen(m);
  const auto b = symmetric_eigen(m);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(ApplySignConvention, SkipsTinyLeadingEntries) {
  Matrix m(3, 1);
  m << 1e-10, -0.6, 0.8;
  apply_sign_convention(m);
  EXPECT_EQ(m(1, 0), 0.6);
  EXPECT_EQ(m(2, 0), -0.8);
}

TEST(Clip, NothingToClipKeepsMatrixVerbatim) {
  Matrix m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  const GMatrix g = clip_negative_eigenvalues(SymMatrix(m));
  EXPECT_EQ(g.matrix().matrix(), m);
  EXPECT_TRUE(g.clipped_indices().empty());
  EXPECT_EQ(g.rank(), 2);
}

TEST(Clip, NegativeEigenvaluesBecomeZero) {
  // eigenvalues 3 and -1
  Matrix m(2, 2);
  m << 1.0, 2.0, 2.0, 1.0;
  const GMatrix g = clip_negative_eigenvalues(SymMatrix(m));
  EXPECT_EQ(g.clipped_indices(), std::vector<Index>{1});
  EXPECT_EQ(g.eigenvalues()(1), 0.0);
  EXPECT_NEAR(g.raw_eigenvalues()(1), -1.0, 1e-14);
  Matrix expected(2, 2);
  expected << 1.5, 1.5, 1.5, 1.5;
  EXPECT_LE((g.matrix().matrix() - expected).norm(), 1e-14);
  EXPECT_EQ(g.rank(), 1);
}

TEST(Clip, ToleranceClipsSmallPositiveValues) {
  const GMatrix g =
      clip_negative_eigenvalues(SymMatrix::diagonal((Vector(3) << 1.0, 1e-6, -1e-6).finished()), 1e-5);
  EXPECT_EQ(g.clipped_indices(), (std::vector<Index>{1, 2}));
  EXPECT_EQ(g.eigenvalues(), (Vector(3) << 1.0, 0.0, 0.0).finished());
  EXPECT_EQ(code_of([] { clip_negative_eigenvalues(SymMatrix::identity(2), -1.0); }),
            ErrorCode::InvalidArgument);
}

TEST(Clip, PropertyIdempotentAndPsd) {
  Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Index k = gen.index(1, 8);
    const GMatrix once = clip_negative_eigenvalues(SymMatrix(gen.symmetric(k)));
    const GMatrix twice = clip_negative_eigenvalues(once);
    EXPECT_EQ(once.matrix().matrix(), twice.matrix().matrix());
    EXPECT_EQ(once.clipped_indices(), twice.clipped_indices());
    EXPECT_GE(once.eigenvalues().minCoeff(), 0.0);
    const double floor = -1e-12 * std::max(1.0, once.matrix().frobenius_norm());
    EXPECT_GE(symmetric_eigen(once.matrix()).values.minCoeff(), floor);
  }
}

TEST(GMatrix, WithGridChecksDimension) {
  const GMatrix g = clip_negative_eigenvalues(SymMatrix::identity(3));
  EXPECT_FALSE(g.grid().has_value());
  EXPECT_EQ(g.with_grid(TraitGrid({1, 2, 3})).grid()->size(), 3);
  EXPECT_EQ(code_of([&] { g.with_grid(TraitGrid({1, 2})); }), ErrorCode::DimensionMismatch);
}

TEST(Error, MessageCarriesCode) {
  const Error e(ErrorCode::UnbalancedDesign, "family 'b' has 3 members");
  EXPECT_EQ(e.code(), ErrorCode::UnbalancedDesign);
  EXPECT_EQ(e.detail(), "family 'b' has 3 members");
  EXPECT_NE(std::string(e.what()).find("family 'b'"), std::string::npos);
}
