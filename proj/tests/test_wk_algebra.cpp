#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wksusy/wk_algebra.hpp"

using namespace wksusy;

namespace {

double max_table_gap(const StructureSpec& spec, int d) {
    const auto T = solve_structure_function(spec, GradedBasis(spec.k(), d));
    const auto ref = oracle::structure_table(spec.k(), d, [&](int s, int n) { return spec.f(s, n); });
    double gap = 0.0;
    for (int s = 0; s < spec.k(); ++s)
        for (int n = 0; n <= d; ++n) gap = std::max(gap, std::abs(T(s, n) - ref[s][n]));
    return gap;
}

}  // namespace

TEST(StructureSpec, OscillatorIsUnitAndGradeBlind) {
    const auto s = StructureSpec::oscillator(4);
    EXPECT_TRUE(s.is_unit());
    EXPECT_TRUE(s.s_independent());
    EXPECT_TRUE(s.unitary_required());
    for (int g = -3; g < 8; ++g) EXPECT_EQ(s.f(g, 5), 1.0);
}

TEST(StructureSpec, CLambdaIsDiscreteFourierOfCoefficients) {
    const int k = 5;
    const std::vector<double> c{1.0, 0.3, 0.0, 0.0, 0.3};
    const auto spec = StructureSpec::c_lambda(c);
    for (int s = 0; s < k; ++s) {
        oracle::cplx z = 0.0;
        for (int t = 0; t < k; ++t) z += std::pow(oracle::q_of(k), s * t) * c[t];
        EXPECT_NEAR(spec.f(s, 0), z.real(), 1e-14);
    }
}

TEST(StructureSpec, CLambdaRejectsComplexSectors) {
    EXPECT_THROW(StructureSpec::c_lambda({1.0, 0.5, 0.0}), ConfigurationError);
}

TEST(StructureSpec, QuantumGroupFamilyIsMinusSymmetricNumber) {
    for (int k = 3; k <= 6; ++k) {
        const auto spec = StructureSpec::uq_sl2(k);
        EXPECT_FALSE(spec.unitary_required());
        for (int s = 0; s < k; ++s) EXPECT_NEAR(spec.f(s, 3), -oracle::symmetric_number(2 * s, k), 1e-12);
    }
}

TEST(StructureSpec, CustomTableLookupsOutsideRangeThrow) {
    const auto spec = StructureSpec::custom(2, 0, {{1.0, 2.0}, {3.0, 4.0}});
    EXPECT_EQ(spec.f(1, 1), 4.0);
    EXPECT_THROW(spec.f(0, 2), ModelDomainError);
    EXPECT_THROW(StructureSpec::custom(3, 0, {{1.0}}), ConfigurationError);
}

TEST(StructureFunction, ChainWalkMatchesLiteralRecursion) {
    for (int k = 2; k <= 6; ++k)
        for (const auto& spec : catalog_models(k)) EXPECT_LT(max_table_gap(spec, 30), 1e-12) << k << " " << describe(spec);
}

TEST(StructureFunction, ClosedFormMatchesChainWalk) {
    for (int k = 2; k <= 5; ++k)
        for (const auto& spec : catalog_models(k)) {
            const auto T = solve_structure_function(spec, GradedBasis(k, 25));
            for (int s = 0; s < k; ++s)
                for (int n = 0; n <= 25; ++n) EXPECT_NEAR(T(s, n), structure_function_closed_form(spec, s, n), 1e-11);
        }
}

TEST(StructureFunction, OscillatorGivesLevelNumber) {
    const auto T = solve_structure_function(StructureSpec::oscillator(3), GradedBasis(3, 10));
    for (int s = 0; s < 3; ++s)
        for (int n = 0; n <= 10; ++n) EXPECT_EQ(T(s, n), n);
}

TEST(StructureFunction, AdmissibleDepthStopsBeforeNegativeAmplitude) {
    // f = b + a n with a < 0 turns F negative once n exceeds about 2b/|a|.
    const auto spec = StructureSpec::linear(2, -0.5, 1.0);
    const int d = admissible_depth(spec, 40);
    EXPECT_LT(d, 40);
    const auto T = solve_structure_function(spec, GradedBasis(2, 40));
    for (int n = 0; n < d; ++n) EXPECT_GE(T(0, n), -1e-12);
    EXPECT_THROW(build_generators(spec, GradedBasis(2, 40)), ModelDomainError);
}

TEST(Generators, OscillatorMatrixElements) {
    const GradedBasis b(3, 8);
    const auto g = build_generators(StructureSpec::oscillator(3), b);
    for (int s = 0; s < 3; ++s)
        for (int n = 1; n < 8; ++n) {
            EXPECT_NEAR(std::abs(g.X_minus(b.flat_index(n - 1, b.wrap(s - 1)), b.flat_index(n, s)) - std::sqrt(n)), 0.0, 1e-15);
            EXPECT_NEAR(std::abs(g.K(b.flat_index(n, s), b.flat_index(n, s)) - std::pow(oracle::q_of(3), s)), 0.0, 1e-15);
        }
    EXPECT_TRUE(g.hermitian);
}

TEST(Generators, QuantumGroupFallsBackToTranspose) {
    const auto g = build_generators(StructureSpec::uq_sl2(5), GradedBasis(5, 12));
    EXPECT_FALSE(g.hermitian);
    EXPECT_LT((g.X_plus.matrix() - g.X_minus.matrix().transpose()).norm(), 1e-14);
}

TEST(Generators, RelationsHoldForCatalog) {
    for (int k = 2; k <= 4; ++k)
        for (const auto& spec : catalog_models(k)) {
            const int d = spec.unitary_required() ? admissible_depth(spec, 24) : 24;
            const auto rep = verify_wk_relations(build_generators(spec, GradedBasis(k, d)));
            EXPECT_TRUE(rep.all_pass()) << k << " " << describe(spec) << " max " << rep.max_residual();
        }
}

TEST(Generators, ProjectorsFromGrading) {
    const auto g = build_generators(StructureSpec::oscillator(4), GradedBasis(4, 6));
    for (int s = 0; s < 4; ++s)
        for (int i = 0; i < g.basis.dim(); ++i)
            EXPECT_EQ(g.projectors[s](i, i), cplx(g.basis.grade_of(i) == s ? 1.0 : 0.0));
}

TEST(Generators, NonPeriodicGradingRejected) {
    const GradedBasis b(3, 4);
    auto K = diagonal_operator(b, [](int, int) { return std::polar(1.0, 0.3); });
    EXPECT_THROW(build_projectors(K, 3), GradingError);
}

TEST(Generators, RelationReportCatchesCorruptedLadder) {
    auto g = build_generators(StructureSpec::oscillator(3), GradedBasis(3, 10));
    CMatrix m = g.X_minus.matrix();
    m(g.basis.flat_index(2, 0), g.basis.flat_index(3, 1)) *= 1.01;
    g.X_minus = OperatorMatrix(g.basis, m);
    const auto rep = verify_wk_relations(g);
    EXPECT_FALSE(rep.at("[X-,X+] = sum_s f_s(N) Pi_s").pass);
}
