#pragma once

#include <cmath>
#include <string>

#include "wksusy/grassmann.hpp"
#include "wksusy/kfermion_quon.hpp"

namespace wksusy {

/// Monomials x^m theta^s with |m| <= M, flat index s*(2M+1) + (m+M).
class LaurentGrassmannSpace {
public:
    LaurentGrassmannSpace(int k, int M) : k_(k), M_(M) {
        if (k < 2) throw DimensionError("grading order must be >= 2");
        if (M < 4) throw WindowError("Laurent window M = " + std::to_string(M) + " is below 4");
    }
    int k() const noexcept { return k_; }
    int M() const noexcept { return M_; }
    int width() const noexcept { return 2 * M_ + 1; }
    int dim() const noexcept { return k_ * width(); }
    int index(int m, int s) const {
        if (std::abs(m) > M_ || s < 0 || s >= k_) throw IndexError("monomial outside the Laurent window");
        return s * width() + (m + M_);
    }

    CMatrix x() const { return lift(shift(+1, [](int) { return 1.0; })); }
    CMatrix x_inverse() const { return lift(shift(-1, [](int) { return 1.0; })); }
    CMatrix d_dx() const { return lift(shift(-1, [](int m) { return static_cast<double>(m); })); }
    CMatrix theta() const { return on_theta(theta_matrix(k_)); }
    CMatrix d_theta() const { return on_theta(q_derivative_matrix(k_, Deform::qbar)); }
    CMatrix cyclic_theta() const { return on_theta(cyclic_theta_operator(k_, Deform::qbar)); }
    CMatrix identity() const { return CMatrix::Identity(dim(), dim()); }

    /// Rows and columns with |m| <= M - margin.
    Window interior(int margin) const {
        if (margin < 0 || margin >= M_) throw WindowError("Laurent margin out of range");
        Eigen::VectorXd mask = Eigen::VectorXd::Zero(dim());
        for (int s = 0; s < k_; ++s)
            for (int m = -(M_ - margin); m <= M_ - margin; ++m) mask(index(m, s)) = 1.0;
        return Window(mask);
    }

    CMatrix on_theta(const CMatrix& g) const { return graded_kron(g, CMatrix::Identity(width(), width())); }
    CMatrix lift(const CMatrix& l) const { return graded_kron(CMatrix::Identity(k_, k_), l); }

private:
    template <class Amp>
    CMatrix shift(int by, Amp amp) const {
        CMatrix l = CMatrix::Zero(width(), width());
        for (int m = -M_; m <= M_; ++m) {
            const int to = m + by;
            if (std::abs(to) <= M_) l(to + M_, m + M_) = amp(m);
        }
        return l;
    }

    int k_;
    int M_;
};

enum class DiffVariant { first, canonical };

inline const char* to_string(DiffVariant v) { return v == DiffVariant::first ? "first" : "canonical"; }

struct DifferentialRealization {
    LaurentGrassmannSpace space;
    DiffVariant variant;
    double c;
    CMatrix X_minus, X_plus, K;
    RelationReport report;
};

inline constexpr int kLaurentMargin = 3;

inline DifferentialRealization build_differential_realization(int k, double c, int M, DiffVariant variant,
                                                              const ToleranceConfig& tol = {}) {
    LaurentGrassmannSpace sp(k, M);
    const CMatrix x = sp.x(), xi = sp.x_inverse(), dx = sp.d_dx();
    const CMatrix th = sp.theta(), dth = sp.d_theta(), D = sp.cyclic_theta();
    const CMatrix K = dth * th - th * dth;
    const CMatrix Dk1 = mat_pow(D, k - 1);

    CMatrix Xm, Xp;
    if (variant == DiffVariant::first) {
        Xm = dx * Dk1 - c * (xi * th);
        Xp = x * D;
    } else {
        const double r2 = std::sqrt(2.0);
        const CMatrix P = (x + dx - (c / 2.0) * (xi * K)) / r2;
        const CMatrix X = (x - dx + (c / 2.0) * (xi * K)) / r2;
        Xm = P * Dk1 - c * (xi * th);
        Xp = X * D;
    }

    const Window w = sp.interior(kLaurentMargin);
    const cplx q = root_power(k, 1);
    const CMatrix I = sp.identity();
    RelationReport rep;
    rep.add("[X-,X+] = 1 + cK", relation_residual(q_commutator(Xm, Xp, 1.0), I + c * K, w, tol));
    rep.add("K^k = 1", relation_residual(mat_pow(K, k), I, w, tol));
    rep.add("K X+ = q X+ K", relation_residual(K * Xp, q * (Xp * K), w, tol));
    rep.add("K X- = qbar X- K", relation_residual(K * Xm, std::conj(q) * (Xm * K), w, tol));
    rep.add("[d/dx, x] = 1", relation_residual(q_commutator(dx, x, 1.0), I, w, tol));
    rep.add("[d/dtheta, theta]_qbar = 1", relation_residual(q_commutator(dth, th, std::conj(q)), I, w, tol));
    return {sp, variant, c, Xm, Xp, K, rep};
}

/// k = 2 supercharges (d/dx - c/x) theta and x d/dtheta against the first realization.
inline RelationReport verify_two_grade_supercharges(double c, int M, const ToleranceConfig& tol = {}) {
    const auto R = build_differential_realization(2, c, M, DiffVariant::first, tol);
    const auto& sp = R.space;
    const CMatrix Qm = (sp.d_dx() - c * sp.x_inverse()) * sp.theta();
    const CMatrix Qp = sp.x() * sp.d_theta();
    const CMatrix I = sp.identity();
    const CMatrix P0 = (I + R.K) / 2.0;
    const CMatrix P1 = (I - R.K) / 2.0;
    const Window w = sp.interior(kLaurentMargin);
    RelationReport rep;
    rep.add("Q-^2 = 0", vanishing_residual(Qm * Qm, std::max(Qm.norm() * Qm.norm(), 1.0), w, tol));
    rep.add("Q+^2 = 0", vanishing_residual(Qp * Qp, std::max(Qp.norm() * Qp.norm(), 1.0), w, tol));
    rep.add("Q- = X- Pi_0", relation_residual(Qm, R.X_minus * P0, w, tol));
    rep.add("Q+ = X+ Pi_1", relation_residual(Qp, R.X_plus * P1, w, tol));
    return rep;
}

}  // namespace wksusy
