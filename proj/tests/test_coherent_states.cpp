#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "wksusy/coherent_states.hpp"

using namespace wksusy;

namespace {

SectorHamiltonianTable oscillator_table(int k, int d) {
    return sector_table(build_generators(StructureSpec::oscillator(k), GradedBasis(k, d)));
}

}  // namespace

TEST(Supercoherent, AmplitudeAtSecondLevel) {
    // k = 3, z = 1: (n=2, s=1) carries 1/sqrt(2!) * 1/sqrt([[1]]) = 1/sqrt(2).
    const auto st = construct_supercoherent(1.0, 3, 10);
    EXPECT_NEAR(std::abs(st.amplitude(2, 1) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(Supercoherent, AmplitudesMatchFactorialOracle) {
    const cplx z(0.6, -0.8);
    for (int k = 2; k <= 5; ++k) {
        const auto st = construct_supercoherent(z, k, 12);
        const auto q = oracle::q_of(k);
        for (int s = 0; s < k; ++s) {
            const double fs = std::abs(oracle::bracket_factorial(s, q));
            for (int n = 0; n < 12; ++n) {
                const double want = std::pow(std::abs(z), n) / std::sqrt(oracle::factorial(n) * fs);
                EXPECT_NEAR(std::abs(st.amplitude(n, s)), want, 1e-12) << k << " " << s << " " << n;
            }
        }
    }
}

TEST(Supercoherent, ZeroLabelIsVacuumTimesThetaSeries) {
    const auto st = construct_supercoherent(0.0, 3, 8);
    for (int s = 0; s < 3; ++s)
        for (int n = 1; n < 8; ++n) EXPECT_EQ(st.amplitude(n, s), cplx(0.0));
    EXPECT_EQ(st.amplitude(0, 0), cplx(1.0));
    EXPECT_EQ(st.coefficient(0, 1)[1], st.amplitude(0, 1));
}

TEST(Supercoherent, ShallowDepthRejected) {
    EXPECT_THROW(construct_supercoherent(1.0, 3, 7), DimensionError);
    EXPECT_THROW(construct_supercoherent(1.0, 1, 10), DimensionError);
}

TEST(Supercoherent, LoweringEigenvalueEquation) {
    for (int k = 2; k <= 5; ++k)
        for (cplx z : {cplx(0.5, 0.0), cplx(-1.2, 0.7), cplx(0.0, 2.0)}) {
            const auto st = construct_supercoherent(z, k, 30);
            const auto chk = lowering_eigen_check(st);
            EXPECT_TRUE(chk.overall.pass) << k << " " << z << " " << chk.overall.residual;
        }
}

TEST(Supercoherent, EvolutionFollowsProductPhaseLaw) {
    std::mt19937 rng(20261019);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 2; k <= 5; ++k) {
        const auto H = oscillator_table(k, 20);
        const auto st = construct_supercoherent(cplx(0.8, 0.3), k, 20);
        for (int i = 0; i < 5; ++i) {
            const double t = u(rng);
            const auto ev = evolution_check(st, H, t);
            EXPECT_TRUE(ev.all_pass()) << k << " t=" << t;
            EXPECT_LT(ev.full_state.residual, 1e-12);
        }
    }
}

TEST(Supercoherent, EvolutionAtZeroTimeIsIdentity) {
    const auto st = construct_supercoherent(cplx(1.0, -1.0), 3, 16);
    const auto ev = evolution_check(st, oscillator_table(3, 16), 0.0);
    EXPECT_EQ(ev.modulus_drift, 0.0);
    EXPECT_LT(ev.full_state.residual, 1e-15);
    for (const auto& s : ev.sectors) EXPECT_EQ(s.residual, 0.0);
}

TEST(Supercoherent, LiteralGradeZeroReadingMissesByFullTurnPhase) {
    for (int k = 2; k <= 5; ++k) {
        const auto st = construct_supercoherent(1.0, k, 12);
        const double t = 0.37;
        const auto ev = evolution_check(st, oscillator_table(k, 12), t);
        const cplx want = std::exp(cplx(0.0, -static_cast<double>(k * (k - 1)) * t));
        EXPECT_NEAR(std::abs(ev.literal_mismatch - want), 0.0, 1e-12);
        EXPECT_GT(ev.sectors[0].literal_residual, 1e-3);
        EXPECT_LT(ev.sectors[0].residual, 1e-12);
    }
}

TEST(Supercoherent, EvolutionNeedsOscillatorTable) {
    const auto st = construct_supercoherent(1.0, 3, 12);
    const auto H = sector_table(build_generators(StructureSpec::linear(3, 0.1, 1.0), GradedBasis(3, 12)));
    EXPECT_THROW(evolution_check(st, H, 0.5), UnsupportedModelError);
}

TEST(Glauber, LoweringEigenstateAwayFromRoots) {
    for (cplx Q : {cplx(0.9), cplx(0.5, 0.3), cplx(1.0)}) {
        const auto st = construct_qglauber(cplx(0.4, 0.2), Q, 40);
        const auto r = qglauber_lowering_check(st);
        EXPECT_TRUE(r.pass) << Q << " " << r.residual;
    }
}

TEST(Glauber, CoefficientsMatchBracketFactorial) {
    const cplx Q(0.9), Z(0.7, 0.1);
    const auto st = construct_qglauber(Z, Q, 10);
    for (int n = 0; n < 10; ++n)
        EXPECT_NEAR(std::abs(st.coeffs(n)), std::pow(std::abs(Z), n) / std::sqrt(std::abs(oracle::bracket_factorial(n, Q))), 1e-13);
}

TEST(Glauber, RootOfUnityDegenerates) {
    EXPECT_THROW(construct_qglauber(1.0, oracle::q_of(3), 10), DegeneracyError);
    EXPECT_NO_THROW(construct_qglauber(1.0, oracle::q_of(3), 3));
}
