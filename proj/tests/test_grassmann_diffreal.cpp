#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wksusy/diffreal.hpp"
#include "wksusy/fd_spectrum.hpp"

using namespace wksusy;

namespace {

std::vector<oracle::cplx> to_vec(const GrassmannElement& e) {
    std::vector<oracle::cplx> v;
    for (int s = 0; s < e.k(); ++s) v.push_back(e[s]);
    return v;
}

}  // namespace

TEST(Grassmann, DerivativeOfSquareInThreeGrades) {
    const auto q = oracle::q_of(3);
    const auto d = q_derivative(GrassmannElement::monomial(3, 2), Deform::q);
    EXPECT_NEAR(std::abs(d[1] - (1.0 + q)), 0.0, 1e-15);
    EXPECT_EQ(d[0], cplx(0.0));
    EXPECT_EQ(d[2], cplx(0.0));
}

TEST(Grassmann, DerivativeMatchesCoefficientOracle) {
    for (int k = 2; k <= 7; ++k) {
        CVector c(k);
        for (int s = 0; s < k; ++s) c(s) = cplx(0.5 + s, -0.25 * s);
        const GrassmannElement e(c);
        for (Deform df : {Deform::q, Deform::qbar}) {
            const auto Q = df == Deform::q ? oracle::q_of(k) : std::conj(oracle::q_of(k));
            const auto got = to_vec(q_derivative(e, df));
            const auto want = oracle::derive(to_vec(e), Q);
            for (int s = 0; s < k; ++s) EXPECT_NEAR(std::abs(got[static_cast<size_t>(s)] - want[static_cast<size_t>(s)]), 0.0, 1e-13);
        }
    }
}

TEST(Grassmann, LeibnizShapeOfDeformedCommutator) {
    // d(theta e) = e + Q theta d(e) on coefficient vectors.
    for (int k = 2; k <= 6; ++k) {
        std::vector<oracle::cplx> c(static_cast<size_t>(k));
        for (int s = 0; s < k - 1; ++s) c[static_cast<size_t>(s)] = oracle::cplx(1.0 + s, 0.3 * s);
        const auto Q = oracle::q_of(k);
        const auto lhs = oracle::derive(oracle::times_theta(c), Q);
        const auto rhs_tail = oracle::times_theta(oracle::derive(c, Q));
        CVector cv(k);
        for (int s = 0; s < k; ++s) cv(s) = c[static_cast<size_t>(s)];
        const CVector lib = q_derivative_matrix(k, Deform::q) * theta_matrix(k) * cv;
        for (int s = 0; s < k; ++s) {
            EXPECT_NEAR(std::abs(lhs[static_cast<size_t>(s)] - (c[static_cast<size_t>(s)] + Q * rhs_tail[static_cast<size_t>(s)])), 0.0, 1e-13);
            EXPECT_NEAR(std::abs(lib(s) - lhs[static_cast<size_t>(s)]), 0.0, 1e-13);
        }
    }
}

TEST(Grassmann, BerezinPicksTopCoefficient) {
    for (int k = 2; k <= 6; ++k) {
        for (int n = 0; n < k - 1; ++n) EXPECT_EQ(berezin_integrate(GrassmannElement::monomial(k, n)), cplx(0.0));
        EXPECT_EQ(berezin_integrate(GrassmannElement::monomial(k, k - 1)), cplx(1.0));
    }
}

TEST(Grassmann, ProductTruncatesAtK) {
    const auto t = GrassmannElement::monomial(4, 1);
    const auto t3 = t * t * t;
    EXPECT_EQ(t3[3], cplx(1.0));
    EXPECT_EQ((t3 * t).coeffs().norm(), 0.0);
    EXPECT_THROW(GrassmannElement::monomial(3, 1) * GrassmannElement::monomial(4, 1), DimensionError);
}

TEST(Grassmann, RelationSuitePasses) {
    for (int k = 2; k <= 8; ++k) {
        const auto rep = verify_grassmann_relations(k);
        EXPECT_TRUE(rep.all_pass()) << k << " " << rep.max_residual();
    }
}

TEST(Grassmann, OrderingPhaseOfTwoGenerators) {
    const int k = 3;
    const auto th = BiGrassmannElement::monomial(k, 0, 1);
    const auto tb = BiGrassmannElement::monomial(k, 1, 0);
    const auto a = th * tb;
    const auto b = tb * th;
    EXPECT_NEAR(std::abs(a.coeff(1, 1) - std::polar(1.0, std::numbers::pi / k) * b.coeff(1, 1)), 0.0, 1e-15);
}

TEST(Laurent, WindowBelowFourRejected) {
    EXPECT_THROW(LaurentGrassmannSpace(3, 3), WindowError);
    EXPECT_NO_THROW(LaurentGrassmannSpace(3, 4));
    EXPECT_THROW(LaurentGrassmannSpace(3, 6).interior(6), WindowError);
}

TEST(Laurent, DerivativeActsOnPowers) {
    const LaurentGrassmannSpace sp(2, 6);
    const CMatrix dx = sp.d_dx();
    EXPECT_EQ(dx(sp.index(-4, 1), sp.index(-3, 1)), cplx(-3.0));
    EXPECT_EQ(dx(sp.index(2, 0), sp.index(3, 0)), cplx(3.0));
    EXPECT_EQ(dx.col(sp.index(0, 0)).norm(), 0.0);
}

TEST(DifferentialRealization, FirstVariantHolds) {
    for (int k = 2; k <= 4; ++k)
        for (double c : {0.0, 0.4, -0.4}) {
            const auto R = build_differential_realization(k, c, 12, DiffVariant::first);
            EXPECT_TRUE(R.report.all_pass()) << k << " c=" << c << " " << R.report.max_residual();
        }
}

TEST(DifferentialRealization, CanonicalVariantWithoutCoupling) {
    for (int k = 2; k <= 4; ++k) {
        const auto R = build_differential_realization(k, 0.0, 12, DiffVariant::canonical);
        EXPECT_TRUE(R.report.all_pass()) << k << " " << R.report.max_residual();
    }
}

TEST(DifferentialRealization, CanonicalVariantWithCouplingMissesCommutator) {
    // The x^{-1} K pieces leave derivative-dependent terms in [X-, X+].
    const auto R = build_differential_realization(2, 0.4, 12, DiffVariant::canonical);
    const auto& c = R.report.at("[X-,X+] = 1 + cK");
    EXPECT_FALSE(c.pass);
    EXPECT_GT(c.residual, 0.1);
    EXPECT_TRUE(R.report.at("K^k = 1").pass);
    EXPECT_TRUE(R.report.at("K X+ = q X+ K").pass);
}

TEST(DifferentialRealization, TwoGradeSupercharges) {
    for (double c : {0.0, 0.4, -0.4}) {
        const auto rep = verify_two_grade_supercharges(c, 12);
        EXPECT_TRUE(rep.all_pass()) << c << " " << rep.max_residual();
    }
}

TEST(FiniteDifference, LowestLevelsOfSuperOscillator) {
    const auto lv = fd_spectrum_super_oscillator(FdGrid::symmetric(8.0, 2001));
    const std::vector<double> exact{0, 1, 1, 2, 2};
    ASSERT_EQ(lv.size(), 5u);
    for (size_t i = 0; i < 5; ++i) EXPECT_NEAR(lv[i], exact[i], 1e-4) << i;
}

TEST(FiniteDifference, ComponentLaddersMatchHarmonicLevels) {
    const FdGrid g = FdGrid::symmetric(8.0, 2001);
    for (double shift : {-0.5, 0.5}) {
        const auto got = fd_component_levels(g, shift, 4);
        const auto want = oracle::harmonic_levels(4, shift);
        for (size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], want[i], 1e-4);
    }
}

TEST(FiniteDifference, SecondOrderConvergence) {
    const auto c = fd_convergence_study(FdGrid::symmetric(8.0, 2001), {0, 1, 1, 2, 2});
    EXPECT_LT(c.fine_error, c.coarse_error);
    EXPECT_GT(c.ratio, 3.5);
    EXPECT_LT(c.ratio, 4.5);
}

TEST(FiniteDifference, GridValidation) {
    EXPECT_THROW(fd_spectrum_super_oscillator({-8.0, 7.0, 2001}), ConfigurationError);
    EXPECT_THROW(fd_spectrum_super_oscillator(FdGrid::symmetric(5.0, 2001)), ConfigurationError);
    EXPECT_THROW(fd_spectrum_super_oscillator(FdGrid::symmetric(8.0, 1000)), ConfigurationError);
}
