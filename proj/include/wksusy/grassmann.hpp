#pragma once

#include <string>
#include <vector>

#include "wksusy/graded_fock.hpp"
#include "wksusy/report.hpp"

namespace wksusy {

enum class Deform { q, qbar };

/// Element of the one-generator algebra: sum_s c_s theta^s with theta^k = 0.
class GrassmannElement {
public:
    explicit GrassmannElement(int k) : c_(CVector::Zero(k)) {
        if (k < 2) throw DimensionError("Grassmann order must be >= 2");
    }
    explicit GrassmannElement(CVector coeffs) : c_(std::move(coeffs)) {
        if (c_.size() < 2) throw DimensionError("Grassmann order must be >= 2");
    }
    static GrassmannElement monomial(int k, int s, cplx value = 1.0) {
        GrassmannElement e(k);
        if (s < 0 || s >= k) throw IndexError("theta power out of range");
        e.c_(s) = value;
        return e;
    }

    int k() const noexcept { return static_cast<int>(c_.size()); }
    const CVector& coeffs() const noexcept { return c_; }
    cplx operator[](int s) const { return c_(s); }

    GrassmannElement operator+(const GrassmannElement& o) const { same(o); return GrassmannElement(CVector(c_ + o.c_)); }
    GrassmannElement operator-(const GrassmannElement& o) const { same(o); return GrassmannElement(CVector(c_ - o.c_)); }
    GrassmannElement operator*(cplx z) const { return GrassmannElement(CVector(c_ * z)); }

    /// Truncated product; the algebra is commutative in one generator.
    GrassmannElement operator*(const GrassmannElement& o) const {
        same(o);
        CVector r = CVector::Zero(k());
        for (int a = 0; a < k(); ++a)
            for (int b = 0; a + b < k(); ++b) r(a + b) += c_(a) * o.c_(b);
        return GrassmannElement(r);
    }

private:
    void same(const GrassmannElement& o) const {
        if (o.k() != k()) throw DimensionError("Grassmann orders differ");
    }
    CVector c_;
};

/// Matrices on the basis 1, theta, ..., theta^{k-1}.
inline CMatrix theta_matrix(int k) {
    CMatrix m = CMatrix::Zero(k, k);
    for (int s = 0; s + 1 < k; ++s) m(s + 1, s) = 1.0;
    return m;
}

/// d/dtheta theta^s = [[s]] theta^{s-1}, with [[.]] in q or qbar.
inline CMatrix q_derivative_matrix(int k, Deform deform) {
    const cplx Q = deform == Deform::q ? root_power(k, 1) : root_power(k, -1);
    CMatrix m = CMatrix::Zero(k, k);
    for (int s = 1; s < k; ++s) m(s - 1, s) = qint(s, Q);
    return m;
}

inline GrassmannElement q_derivative(const GrassmannElement& e, Deform deform) {
    return GrassmannElement(CVector(q_derivative_matrix(e.k(), deform) * e.coeffs()));
}

/// Coefficient of theta^{k-1}.
inline cplx berezin_integrate(const GrassmannElement& e) { return e[e.k() - 1]; }

/// d/dtheta + theta^{k-1}/[[k-1]]!, a cyclic shift whose k-th power is 1.
inline CMatrix cyclic_theta_operator(int k, Deform deform) {
    const cplx Q = deform == Deform::q ? root_power(k, 1) : root_power(k, -1);
    CMatrix th_top = CMatrix::Identity(k, k);
    const CMatrix th = theta_matrix(k);
    for (int j = 0; j < k - 1; ++j) th_top = th_top * th;
    return q_derivative_matrix(k, deform) + th_top / qfactorial(k - 1, Q);
}

/// Two generators theta, thetabar over normal-ordered monomials
/// thetabar^t theta^s, flat index t*k + s. Reordering uses
/// theta thetabar = q^{1/2} thetabar theta.
class BiGrassmannElement {
public:
    explicit BiGrassmannElement(int k) : k_(k), c_(CMatrix::Zero(k, k)) {
        if (k < 2) throw DimensionError("Grassmann order must be >= 2");
    }
    static BiGrassmannElement monomial(int k, int t, int s, cplx v = 1.0) {
        BiGrassmannElement e(k);
        e.c_(t, s) = v;
        return e;
    }

    int k() const noexcept { return k_; }
    cplx coeff(int t, int s) const { return c_(t, s); }
    const CMatrix& coeffs() const noexcept { return c_; }

    BiGrassmannElement operator+(const BiGrassmannElement& o) const {
        BiGrassmannElement r(k_);
        r.c_ = c_ + o.c_;
        return r;
    }

    /// (tb^t1 th^s1)(tb^t2 th^s2) = q^{s1 t2 / 2} tb^{t1+t2} th^{s1+s2}.
    BiGrassmannElement operator*(const BiGrassmannElement& o) const {
        BiGrassmannElement r(k_);
        for (int t1 = 0; t1 < k_; ++t1)
            for (int s1 = 0; s1 < k_; ++s1) {
                if (c_(t1, s1) == cplx(0.0)) continue;
                for (int t2 = 0; t1 + t2 < k_; ++t2)
                    for (int s2 = 0; s1 + s2 < k_; ++s2)
                        r.c_(t1 + t2, s1 + s2) += root_power(2 * k_, static_cast<long long>(s1) * t2) * c_(t1, s1) * o.c_(t2, s2);
            }
        return r;
    }

    /// Coefficients over the opposite order theta^s thetabar^t.
    CMatrix theta_first() const {
        CMatrix d = c_;
        for (int t = 0; t < k_; ++t)
            for (int s = 0; s < k_; ++s) d(t, s) *= root_power(2 * k_, -static_cast<long long>(s) * t);
        return d;
    }
    static BiGrassmannElement from_theta_first(int k, const CMatrix& d) {
        BiGrassmannElement e(k);
        for (int t = 0; t < k; ++t)
            for (int s = 0; s < k; ++s) e.c_(t, s) = d(t, s) * root_power(2 * k, static_cast<long long>(s) * t);
        return e;
    }

private:
    int k_;
    CMatrix c_;
};

struct BiGrassmannOps {
    CMatrix theta, thetabar, d_theta, d_thetabar, N_theta;
};

/// Left actions on the k^2 monomials:
///   theta:   tb^t th^s -> q^{t/2} tb^t th^{s+1}
///   thetabar:          -> tb^{t+1} th^s
///   d_theta:           -> q^{-t/2} [[s]]_q tb^t th^{s-1}
///   d_thetabar:        -> q^{-s} [[t]]_qbar tb^{t-1} th^s
inline BiGrassmannOps bi_grassmann_ops(int k) {
    const int D = k * k;
    auto idx = [k](int t, int s) { return t * k + s; };
    const cplx q = root_power(k, 1);
    const cplx qb = root_power(k, -1);
    BiGrassmannOps o{CMatrix::Zero(D, D), CMatrix::Zero(D, D), CMatrix::Zero(D, D), CMatrix::Zero(D, D), CMatrix::Zero(D, D)};
    for (int t = 0; t < k; ++t)
        for (int s = 0; s < k; ++s) {
            if (s + 1 < k) o.theta(idx(t, s + 1), idx(t, s)) = root_power(2 * k, t);
            if (t + 1 < k) o.thetabar(idx(t + 1, s), idx(t, s)) = 1.0;
            if (s >= 1) o.d_theta(idx(t, s - 1), idx(t, s)) = root_power(2 * k, -t) * qint(s, q);
            if (t >= 1) o.d_thetabar(idx(t - 1, s), idx(t, s)) = root_power(k, -s) * qint(t, qb);
            o.N_theta(idx(t, s), idx(t, s)) = static_cast<double>(s);
        }
    return o;
}

inline CMatrix mat_pow(const CMatrix& A, int m) {
    CMatrix r = CMatrix::Identity(A.rows(), A.cols());
    for (int i = 0; i < m; ++i) r = r * A;
    return r;
}

inline RelationReport verify_grassmann_relations(int k, const ToleranceConfig& tol = {.rel_tol = 1e-12, .abs_floor = 1e-12}) {
    if (k < 2) throw DimensionError("Grassmann order must be >= 2");
    RelationReport rep;
    const Window w = Window::full(k);
    const CMatrix I = CMatrix::Identity(k, k);
    const CMatrix th = theta_matrix(k);
    const cplx q = root_power(k, 1);
    const cplx qb = root_power(k, -1);

    const CMatrix dqb = q_derivative_matrix(k, Deform::qbar);
    const CMatrix dq = q_derivative_matrix(k, Deform::q);
    rep.add("[d,theta]_qbar = 1 (qbar derivative)", relation_residual(q_commutator(dqb, th, qb), I, w, tol));
    rep.add("d theta - q theta d = 1 (q derivative)", relation_residual(q_commutator(dq, th, q), I, w, tol));
    rep.add("theta^k = 0", vanishing_residual(mat_pow(th, k), 1.0, w, tol));
    rep.add("d^k = 0 (qbar derivative)", vanishing_residual(mat_pow(dqb, k), std::pow(dqb.norm(), k), w, tol));
    rep.add("d^k = 0 (q derivative)", vanishing_residual(mat_pow(dq, k), std::pow(dq.norm(), k), w, tol));
    rep.add("(d + theta^{k-1}/[[k-1]]_qbar!)^k = 1",
            relation_residual(mat_pow(cyclic_theta_operator(k, Deform::qbar), k), I, w, tol));
    rep.add("(d + theta^{k-1}/[[k-1]]_q!)^k = 1",
            relation_residual(mat_pow(cyclic_theta_operator(k, Deform::q), k), I, w, tol));
    rep.add("(d theta - theta d)^k = 1 (qbar derivative)",
            relation_residual(mat_pow(q_commutator(dqb, th, 1.0), k), I, w, tol));
    rep.add("(d theta - theta d)^k = 1 (q derivative)",
            relation_residual(mat_pow(q_commutator(dq, th, 1.0), k), I, w, tol));

    // Berezin rules.
    {
        double worst = 0.0;
        for (int n = 0; n <= k - 2; ++n) worst = std::max(worst, std::abs(berezin_integrate(GrassmannElement::monomial(k, n))));
        rep.add("int dtheta theta^n = 0 for n <= k-2", worst, worst <= tol.rel_tol);
        const double top = std::abs(berezin_integrate(GrassmannElement::monomial(k, k - 1)) - 1.0);
        rep.add("int dtheta theta^{k-1} = 1", top, top <= tol.rel_tol);
        double dv = 0.0;
        double lin = 0.0;
        for (int s = 0; s < k; ++s) {
            CVector a(k), b(k);
            for (int j = 0; j < k; ++j) {
                a(j) = cplx(0.3 * (j + 1) - 0.1 * s, 0.7 - 0.2 * j);
                b(j) = cplx(-0.4 + 0.1 * j * s, 0.05 * j);
            }
            const GrassmannElement ea(a), eb(b);
            for (Deform df : {Deform::q, Deform::qbar}) dv = std::max(dv, std::abs(berezin_integrate(q_derivative(ea, df))));
            const cplx alpha(0.6, -1.1);
            lin = std::max(lin, std::abs(berezin_integrate(ea * alpha + eb) - (alpha * berezin_integrate(ea) + berezin_integrate(eb))));
        }
        rep.add("int dtheta d e = 0", dv, dv <= tol.rel_tol);
        rep.add("integration is linear", lin, lin <= tol.rel_tol);
    }

    // Two generators.
    const auto o = bi_grassmann_ops(k);
    const Window W = Window::full(k * k);
    const CMatrix II = CMatrix::Identity(k * k, k * k);
    const cplx qh = root_power(2 * k, 1);
    const cplx qmh = root_power(2 * k, -1);
    rep.add("theta thetabar = q^{1/2} thetabar theta",
            relation_residual(o.theta * o.thetabar, qh * (o.thetabar * o.theta), W, tol));
    rep.add("d_theta d_thetabar = q^{-1/2} d_thetabar d_theta",
            relation_residual(o.d_theta * o.d_thetabar, qmh * (o.d_thetabar * o.d_theta), W, tol));
    rep.add("d_theta theta - q theta d_theta = 1 (two generators)",
            relation_residual(q_commutator(o.d_theta, o.theta, q), II, W, tol));
    {
        CMatrix qN = CMatrix::Zero(k * k, k * k);
        for (int i = 0; i < k * k; ++i) qN(i, i) = root_power(k, -static_cast<long long>(o.N_theta(i, i).real()));
        rep.add("d_thetabar thetabar - qbar thetabar d_thetabar = q^{-N_theta}",
                relation_residual(q_commutator(o.d_thetabar, o.thetabar, qb), qN, W, tol));
    }
    rep.add("thetabar^k = 0", vanishing_residual(mat_pow(o.thetabar, k), 1.0, W, tol));
    rep.add("d_thetabar^k = 0", vanishing_residual(mat_pow(o.d_thetabar, k), std::pow(o.d_thetabar.norm(), k), W, tol));
    {
        double worst = 0.0;
        for (int t = 0; t < k; ++t)
            for (int s = 0; s < k; ++s) {
                BiGrassmannElement e = BiGrassmannElement::monomial(k, t, s, cplx(1.0 + t, -0.5 * s));
                const auto back = BiGrassmannElement::from_theta_first(k, e.theta_first());
                worst = std::max(worst, (back.coeffs() - e.coeffs()).cwiseAbs().maxCoeff());
            }
        rep.add("reorder round trip is the identity", worst, worst <= tol.rel_tol);
    }
    {
        // Left multiplication by theta agrees with the reordering product.
        double worst = 0.0;
        const auto th1 = BiGrassmannElement::monomial(k, 0, 1);
        for (int t = 0; t < k; ++t)
            for (int s = 0; s < k; ++s) {
                const auto prod = th1 * BiGrassmannElement::monomial(k, t, s);
                CVector v = CVector::Zero(k * k);
                v(t * k + s) = 1.0;
                const CVector act = o.theta * v;
                for (int tt = 0; tt < k; ++tt)
                    for (int ss = 0; ss < k; ++ss) worst = std::max(worst, std::abs(prod.coeff(tt, ss) - act(tt * k + ss)));
            }
        rep.add("theta action matches the ordered product", worst, worst <= tol.rel_tol);
    }
    return rep;
}

}  // namespace wksusy
