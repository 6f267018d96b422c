#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wksusy/graded_fock.hpp"
#include "wksusy/report.hpp"

using namespace wksusy;

TEST(QNumbers, RootPowersMatchPolarForm) {
    for (int k = 2; k <= 8; ++k)
        for (int m = -2 * k; m <= 2 * k; ++m)
            EXPECT_NEAR(std::abs(root_power(k, m) - std::pow(oracle::q_of(k), m)), 0.0, 1e-14) << k << " " << m;
}

TEST(QNumbers, QuarterTurnsAreExact) {
    EXPECT_EQ(root_power(4, 1), cplx(0.0, 1.0));
    EXPECT_EQ(root_power(2, 1), cplx(-1.0, 0.0));
    EXPECT_EQ(root_power(4, 7), cplx(0.0, -1.0));
}

TEST(QNumbers, BracketAgreesWithQuotient) {
    const cplx Q(0.7, 0.4);
    for (int n = 0; n < 12; ++n) EXPECT_NEAR(std::abs(qint(n, Q) - oracle::bracket(n, Q)), 0.0, 1e-13);
    for (int k = 2; k <= 6; ++k)
        for (int n = 0; n <= 2 * k; ++n)
            EXPECT_NEAR(std::abs(qint_root(n, k) - oracle::bracket(n, oracle::q_of(k))), 0.0, 1e-13);
}

TEST(QNumbers, BracketOfKVanishesAtRoot) {
    for (int k = 2; k <= 8; ++k) EXPECT_LT(std::abs(qint_root(k, k)), 1e-15);
}

TEST(QNumbers, SymmetricNumberMatchesSineRatio) {
    for (int k = 3; k <= 8; ++k)
        for (int n = -6; n <= 12; ++n) EXPECT_NEAR(sym_qnumber(n, k), oracle::symmetric_number(n, k), 1e-12);
}

TEST(QNumbers, SymmetricNumberAtTwoIsLimit) {
    // q = -1: [n] = n (-1)^{n-1}
    for (int n = 0; n < 8; ++n) EXPECT_DOUBLE_EQ(sym_qnumber(n, 2), n * (n % 2 ? 1.0 : -1.0));
    for (int t = 0; t < 5; ++t) EXPECT_DOUBLE_EQ(sine_ratio(t, 2), -2.0 * t);
}

TEST(GradedBasis, FlatIndexRoundTrip) {
    const GradedBasis b(3, 5);
    EXPECT_EQ(b.dim(), 15);
    for (int s = 0; s < 3; ++s)
        for (int n = 0; n < 5; ++n) {
            const int i = b.flat_index(n, s);
            EXPECT_EQ(i, s * 5 + n);
            EXPECT_EQ(b.level_of(i), n);
            EXPECT_EQ(b.grade_of(i), s);
        }
    EXPECT_EQ(b.wrap(-1), 2);
    EXPECT_EQ(b.wrap(7), 1);
}

TEST(GradedBasis, RejectsBadShapes) {
    EXPECT_THROW(GradedBasis(1, 10), DimensionError);
    EXPECT_THROW(GradedBasis(3, 3), DimensionError);
    const GradedBasis b(2, 4);
    EXPECT_THROW(b.flat_index(4, 0), IndexError);
    EXPECT_THROW(b.flat_index(0, 2), IndexError);
    EXPECT_THROW(b.level_of(8), IndexError);
}

TEST(OperatorMatrix, ChecksShapeAndFiniteness) {
    const GradedBasis b(2, 4);
    EXPECT_THROW(OperatorMatrix(b, CMatrix::Zero(7, 8)), DimensionError);
    CMatrix m = CMatrix::Zero(8, 8);
    m(0, 0) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(OperatorMatrix(b, m), DimensionError);
    EXPECT_THROW(OperatorMatrix::identity(b) * OperatorMatrix::identity(GradedBasis(2, 5)), DimensionError);
}

TEST(OperatorMatrix, SparseAndDenseProductsAgree) {
    const GradedBasis b(4, 30);
    CMatrix a = CMatrix::Zero(b.dim(), b.dim()), c = CMatrix::Zero(b.dim(), b.dim());
    for (int i = 0; i + 1 < b.dim(); ++i) {
        a(i + 1, i) = cplx(std::sqrt(i + 1.0), 0.25 * i);
        c(i, i) = cplx(1.0 / (i + 1), -0.5);
    }
    const CMatrix dense = a * c * a.adjoint();
    const CMatrix viaOps = (OperatorMatrix(b, a) * OperatorMatrix(b, c) * OperatorMatrix(b, a).dagger()).matrix();
    EXPECT_LT((dense - viaOps).norm() / dense.norm(), 1e-15);
}

TEST(Residuals, IdentityAgainstItselfIsZero) {
    const CMatrix A = CMatrix::Random(6, 6);
    EXPECT_EQ(relation_residual(A, A, Window::full(6)).residual, 0.0);
}

TEST(Residuals, WindowHidesEdgeDefects) {
    const GradedBasis b(2, 6);
    CMatrix A = CMatrix::Identity(12, 12), B = A;
    B(b.flat_index(5, 1), b.flat_index(5, 1)) = 7.0;
    EXPECT_FALSE(relation_residual(A, B, Window::full(12)).pass);
    EXPECT_TRUE(relation_residual(A, B, interior_window(b, 1)).pass);
    EXPECT_EQ(interior_window(b, 1).rank(), 10);
    EXPECT_THROW(interior_window(b, 6), WindowError);
}

TEST(Residuals, VanishingUsesSuppliedScale) {
    CMatrix E = CMatrix::Zero(3, 3);
    E(0, 1) = 1e-9;
    EXPECT_TRUE(vanishing_residual(E, 100.0, Window::full(3)).pass);
    EXPECT_FALSE(vanishing_residual(E, 1e-3, Window::full(3)).pass);
}

TEST(Residuals, CommutatorScaleCatchesZeroRightHandSide) {
    CMatrix A = CMatrix::Zero(3, 3), B = CMatrix::Zero(3, 3);
    A(0, 1) = 1.0;
    B(1, 0) = 1.0;
    const auto r = commutator_residual(A, B, 1.0, CMatrix::Zero(3, 3), Window::full(3));
    EXPECT_FALSE(r.pass);  // [A,B] = diag(1,-1,0) is not zero
    const auto ok = commutator_residual(A, A, 1.0, CMatrix::Zero(3, 3), Window::full(3));
    EXPECT_TRUE(ok.pass);
}

TEST(Spectrum, DiagonalOnly) {
    const GradedBasis b(2, 4);
    CMatrix h = CMatrix::Zero(8, 8);
    for (int i = 0; i < 8; ++i) h(i, i) = 8 - i;
    const auto sp = diagonal_spectrum(OperatorMatrix(b, h));
    ASSERT_EQ(sp.size(), 8u);
    EXPECT_DOUBLE_EQ(sp.front().energy, 1.0);
    EXPECT_EQ(sp.front().s, 1);
    EXPECT_EQ(sp.front().n, 3);
    h(0, 1) = 0.5;
    EXPECT_THROW(diagonal_spectrum(OperatorMatrix(b, h)), ShapeError);
}

TEST(Report, ConjunctionAndLookup) {
    RelationReport r;
    EXPECT_TRUE(r.all_pass());
    r.add("a", 1e-14, true);
    r.add("b", 0.3, false);
    EXPECT_FALSE(r.all_pass());
    EXPECT_DOUBLE_EQ(r.max_residual(), 0.3);
    EXPECT_TRUE(r.contains("a"));
    EXPECT_THROW(r.at("c"), IndexError);
}

TEST(ToleranceConfig, RejectsNonPositive) {
    EXPECT_THROW((ToleranceConfig{0.0, 1e-12}.validate()), ConfigurationError);
    EXPECT_THROW((ToleranceConfig{1e-10, -1.0}.validate()), ConfigurationError);
    EXPECT_NO_THROW(ToleranceConfig{}.validate());
}
