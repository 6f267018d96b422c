#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "wksusy/grassmann.hpp"
#include "wksusy/kfermion_quon.hpp"
#include "wksusy/susy_engine.hpp"

namespace wksusy {

namespace detail {

/// prod_{j<=s} sqrt([[j]]_Q), each root on the principal branch.
inline cplx root_qfactorial(int s, cplx Q) {
    cplx acc{1.0, 0.0};
    for (int j = 1; j <= s; ++j) acc *= std::sqrt(qint(j, Q));
    return acc;
}

/// Relative residual of row-masked columns (state vectors rather than operators).
inline Residual masked_residual(const CMatrix& lhs, const CMatrix& rhs, const Eigen::VectorXd& mask,
                                const ToleranceConfig& tol) {
    const auto W = mask.cast<cplx>().asDiagonal();
    const double num = (W * (lhs - rhs)).norm();
    const double den = std::max({(W * lhs).norm(), (W * rhs).norm(), tol.abs_floor});
    return {num / den, num / den <= tol.rel_tol};
}

inline double sqrt_factorial(int n) {
    double acc = 1.0;
    for (int j = 2; j <= n; ++j) acc *= std::sqrt(static_cast<double>(j));
    return acc;
}

}  // namespace detail

/// sum_n Z^n / sqrt([[n]]_Q!) |n>.
struct QGlauberState {
    cplx Z;
    cplx Q;
    int depth;
    CVector coeffs;
};

inline QGlauberState construct_qglauber(cplx Z, cplx Q, int depth) {
    if (depth < 2) throw DimensionError("Glauber depth must be >= 2");
    for (int n = 1; n < depth; ++n)
        if (std::abs(qint(n, Q)) < 1e-12)
            throw DegeneracyError("[[" + std::to_string(n) + "]]_Q vanishes below the truncation depth; "
                                  "Q sits at a root of unity, use the k-fermion decomposition instead");
    QGlauberState st{Z, Q, depth, CVector::Zero(depth)};
    cplx zn{1.0, 0.0};
    for (int n = 0; n < depth; ++n) {
        st.coeffs(n) = zn / detail::root_qfactorial(n, Q);
        zn *= Z;
    }
    return st;
}

/// a-|Z) = Z|Z) on levels n <= depth-1-margin, symmetric Fock action.
inline Residual qglauber_lowering_check(const QGlauberState& st, int margin = 1, const ToleranceConfig& tol = {}) {
    const QuonAlgebra A(st.Q, st.depth);
    const CMatrix lhs = A.a_minus * st.coeffs;
    const CMatrix rhs = st.Z * st.coeffs;
    return detail::masked_residual(lhs, rhs, A.interior_mask(margin), tol);
}

/// sum_{n,s} (theta^s / sqrt([[s]]_q!)) (z^n / sqrt(n!)) |n, s>.
/// Row s*depth + n holds the Grassmann coefficient, columns are theta powers.
struct FractionalSupercoherentState {
    cplx z;
    int k;
    int depth;
    CMatrix coeffs;

    GrassmannElement coefficient(int n, int s) const {
        return GrassmannElement(CVector(coeffs.row(s * depth + n).transpose()));
    }
    /// Scalar multiplying theta^s at (n, s).
    cplx amplitude(int n, int s) const { return coeffs(s * depth + n, s); }
};

inline FractionalSupercoherentState construct_supercoherent(cplx z, int k, int depth) {
    if (k < 2) throw DimensionError("grading order must be >= 2");
    if (depth < 8) throw DimensionError("supercoherent depth must be >= 8");
    const cplx q = root_power(k, 1);
    FractionalSupercoherentState st{z, k, depth, CMatrix::Zero(static_cast<Eigen::Index>(k) * depth, k)};
    for (int s = 0; s < k; ++s) {
        const cplx fs = detail::root_qfactorial(s, q);
        cplx zn{1.0, 0.0};
        for (int n = 0; n < depth; ++n) {
            st.coeffs(s * depth + n, s) = zn / (detail::sqrt_factorial(n) * fs);
            zn *= z;
        }
    }
    return st;
}

inline Window boson_window(int k, int depth, int margin) {
    if (margin < 0 || margin >= depth) throw WindowError("boson margin out of range");
    Eigen::VectorXd m = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k) * depth);
    for (int s = 0; s < k; ++s)
        for (int n = 0; n <= depth - 1 - margin; ++n) m(s * depth + n) = 1.0;
    return Window(m);
}

struct LoweringCheck {
    Residual overall;
    double max_component = 0.0;  // max |lhs - rhs| over (n, s) in the window
    int worst_n = 0;
    int worst_s = 0;
};

/// f- b- |z,theta) against z theta |z,theta), theta multiplication truncating at theta^k.
inline LoweringCheck lowering_eigen_check(const FractionalSupercoherentState& st, int margin = 4,
                                          const ToleranceConfig& tol = {}) {
    const int k = st.k, d = st.depth;
    const QuonAlgebra fer(root_power(k, 1), k);
    CMatrix b = CMatrix::Zero(d, d);
    for (int n = 1; n < d; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    const CMatrix fb = graded_kron(fer.a_minus, b);
    const CMatrix lhs = fb * st.coeffs;
    const CMatrix rhs = st.z * st.coeffs * theta_matrix(k).transpose();

    const Window w = boson_window(k, d, margin);
    LoweringCheck out;
    out.overall = detail::masked_residual(lhs, rhs, w.mask(), tol);
    for (int s = 0; s < k; ++s)
        for (int n = 0; n <= d - 1 - margin; ++n) {
            const double e = (lhs.row(s * d + n) - rhs.row(s * d + n)).norm();
            if (e > out.max_component) {
                out.max_component = e;
                out.worst_n = n;
                out.worst_s = s;
            }
        }
    return out;
}

/// Grade exponent used for the theta phase: s, or k for the s = 0 sector.
inline int evolution_grade(int s, int k) { return s == 0 ? k : s; }

inline double claimed_phase_rate(int k, int n, int g) {
    return (k - 1) * (k + 2) / 2.0 + (k - 1) * static_cast<double>(n) - (k - 1) * static_cast<double>(g);
}

struct SectorPhaseResult {
    int s;
    double residual;        // max_n |evolved phase - claimed phase|, grade convention
    double literal_residual;  // same with g = s for every sector
    bool pass;
};

struct EvolutionCheck {
    double t;
    std::vector<SectorPhaseResult> sectors;
    double modulus_drift = 0.0;         // max | |evolved| - |initial| |
    cplx literal_mismatch{1.0, 0.0};    // claimed(g=0)/evolved at (n=0, s=0)
    double literal_mismatch_error = 0.0;  // |literal_mismatch - e^{-i k(k-1) t}|
    Residual full_state;                // evolved vs rebuilt state at (e^{-i(k-1)t} z, e^{i(k-1)t} theta)
    bool all_pass() const {
        for (const auto& s : sectors)
            if (!s.pass) return false;
        return full_state.pass && modulus_drift <= 1e-12;
    }
};

/// Diagonal evolution exp(-i H t) of each (n, s) coefficient against the product phase law.
inline EvolutionCheck evolution_check(const FractionalSupercoherentState& st, const SectorHamiltonianTable& H, double t,
                                      const ToleranceConfig& tol = {}) {
    if (!H.is_oscillator())
        throw UnsupportedModelError("evolution law is stated for the oscillator Hamiltonian, got '" + H.source_model() + "'");
    const int k = st.k, d = st.depth;
    if (H.k() != k) throw DimensionError("Hamiltonian table and state differ in k");
    if (H.d() + 1 < d) throw DimensionError("Hamiltonian table shallower than the state");
    const cplx I{0.0, 1.0};

    EvolutionCheck out;
    out.t = t;
    CMatrix evolved = st.coeffs;
    for (int s = 0; s < k; ++s) {
        SectorPhaseResult r{s, 0.0, 0.0, true};
        const int g = evolution_grade(s, k);
        for (int n = 0; n < d; ++n) {
            const cplx ev = std::exp(-I * H(s, n) * t);
            const cplx cl = std::exp(-I * claimed_phase_rate(k, n, g) * t);
            const cplx lit = std::exp(-I * claimed_phase_rate(k, n, s) * t);
            r.residual = std::max(r.residual, std::abs(ev - cl));
            r.literal_residual = std::max(r.literal_residual, std::abs(ev - lit));
            evolved.row(s * d + n) *= ev;
        }
        r.pass = r.residual <= tol.rel_tol;
        out.sectors.push_back(r);
    }
    for (Eigen::Index i = 0; i < evolved.rows(); ++i)
        for (Eigen::Index j = 0; j < evolved.cols(); ++j)
            out.modulus_drift = std::max(out.modulus_drift, std::abs(std::abs(evolved(i, j)) - std::abs(st.coeffs(i, j))));

    out.literal_mismatch = std::exp(-I * claimed_phase_rate(k, 0, 0) * t) / std::exp(-I * H(0, 0) * t);
    out.literal_mismatch_error = std::abs(out.literal_mismatch - std::exp(-I * static_cast<double>(k * (k - 1)) * t));

    // Rebuild from the rotated labels; the theta phase of the s = 0 sector uses g = k.
    const double w = (k - 1) * t;
    const auto rot = construct_supercoherent(st.z * std::exp(-I * w), k, d);
    CMatrix claimed = rot.coeffs * std::exp(-I * ((k - 1) * (k + 2) / 2.0) * t);
    for (int s = 0; s < k; ++s) claimed.middleRows(s * d, d) *= std::exp(I * w * static_cast<double>(evolution_grade(s, k)));
    out.full_state = detail::masked_residual(evolved, claimed, Eigen::VectorXd::Ones(evolved.rows()), tol);
    return out;
}

}  // namespace wksusy
