#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "wksusy/grassmann.hpp"
#include "wksusy/wk_algebra.hpp"

namespace wksusy {

enum class RepType { nilpotent, cyclic, semiperiodic };

inline const char* to_string(RepType t) {
    switch (t) {
        case RepType::nilpotent: return "nilpotent";
        case RepType::cyclic: return "cyclic";
        case RepType::semiperiodic: return "semiperiodic";
    }
    return "?";
}

/// k-dimensional representation on |m>, m = 0..k-1, with J3 = j0 + m.
/// Edge m (1..k-1) joins |m-1> and |m>; edge 0 is the wrap joining |k-1> and |0>:
///   J+|m-1> = b_m |m>,  J-|m> = a_m |m-1>,  J+J-|m> = p_m |m>, p_m = a_m b_m.
struct UqSl2Rep {
    CMatrix J_minus, J_plus, qJ3, qJ3_inv, J3;
    RepType rep_type;
    int k;
    int j0;
    CMatrix casimir;     // J- J+ form
    CMatrix casimir_alt;  // J+ J- form
};

namespace detail {

/// S_m = sum_{j<m} [2(j0+j)]_q for m = 0..k.
inline std::vector<double> partial_sums(int k, int j0) {
    std::vector<double> S(static_cast<size_t>(k + 1), 0.0);
    for (int m = 1; m <= k; ++m) S[static_cast<size_t>(m)] = S[static_cast<size_t>(m - 1)] + sym_qnumber(2LL * (j0 + m - 1), k);
    return S;
}

inline int choose_j0(int k) {
    if (k % 2 == 1) return (k + 1) / 2;
    for (int j0 = 0; j0 < k; ++j0) {
        const auto S = partial_sums(k, j0);
        bool ok = true;
        for (int m = 1; m < k; ++m)
            if (std::abs(S[static_cast<size_t>(m)]) < 1e-8) ok = false;
        if (ok) return j0;
    }
    return 0;
}

/// Real root above max S_m of prod_m (x - S_m) = 1.
inline double cyclic_anchor(const std::vector<double>& S, int k) {
    double lo = S[0];
    for (int m = 0; m < k; ++m) lo = std::max(lo, S[static_cast<size_t>(m)]);
    auto g = [&](double x) {
        double p = 1.0;
        for (int m = 0; m < k; ++m) p *= (x - S[static_cast<size_t>(m)]);
        return p - 1.0;
    };
    double hi = lo + 1.0;
    while (g(hi) < 0.0) hi = lo + 2.0 * (hi - lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

inline UqSl2Rep build_uqsl2_rep(int k, RepType type) {
    if (k < 3)
        throw RepresentationError("no k-dimensional representation with (q^J3)^k = 1 exists at k = 2: "
                                  "q - 1/q vanishes and the trace of [2 J3]_q cannot be zero");
    const int j0 = detail::choose_j0(k);
    const auto S = detail::partial_sums(k, j0);
    if (std::abs(S[static_cast<size_t>(k)]) > 1e-9)
        throw RepresentationError("sum of [2 J3]_q over the weights does not vanish");

    std::vector<double> p(static_cast<size_t>(k)), a(static_cast<size_t>(k)), b(static_cast<size_t>(k));
    const double p0 = type == RepType::cyclic ? detail::cyclic_anchor(S, k) : 0.0;
    for (int m = 0; m < k; ++m) {
        const double v = p0 - S[static_cast<size_t>(m)];
        p[static_cast<size_t>(m)] = std::abs(v) < 1e-12 ? 0.0 : v;
    }

    switch (type) {
        case RepType::nilpotent:
            for (int m = 1; m < k; ++m) {
                const bool zero = p[static_cast<size_t>(m)] == 0.0;
                a[static_cast<size_t>(m)] = zero ? 0.0 : 1.0;
                b[static_cast<size_t>(m)] = zero ? 1.0 : p[static_cast<size_t>(m)];
            }
            break;
        case RepType::cyclic:
            for (int m = 0; m < k; ++m) {
                a[static_cast<size_t>(m)] = 1.0;
                b[static_cast<size_t>(m)] = p[static_cast<size_t>(m)];
            }
            break;
        case RepType::semiperiodic: {
            double prod = 1.0;
            a[0] = 0.0;
            for (int m = 1; m < k; ++m) {
                const bool zero = p[static_cast<size_t>(m)] == 0.0;
                a[static_cast<size_t>(m)] = zero ? 0.0 : 1.0;
                b[static_cast<size_t>(m)] = zero ? 1.0 : p[static_cast<size_t>(m)];
                prod *= b[static_cast<size_t>(m)];
            }
            b[0] = 1.0 / prod;
            break;
        }
    }

    UqSl2Rep r;
    r.k = k;
    r.j0 = j0;
    r.rep_type = type;
    r.J_minus = CMatrix::Zero(k, k);
    r.J_plus = CMatrix::Zero(k, k);
    r.qJ3 = CMatrix::Zero(k, k);
    r.qJ3_inv = CMatrix::Zero(k, k);
    r.J3 = CMatrix::Zero(k, k);
    for (int m = 0; m < k; ++m) {
        const int lower = (m + k - 1) % k;  // m = 0 wraps to k-1
        r.J_minus(lower, m) = a[static_cast<size_t>(m)];
        r.J_plus(m, lower) = b[static_cast<size_t>(m)];
        r.qJ3(m, m) = root_power(k, j0 + m);
        r.qJ3_inv(m, m) = root_power(k, -(j0 + m));
        r.J3(m, m) = static_cast<double>(j0 + m);
    }
    const cplx q = root_power(k, 1);
    const cplx qi = root_power(k, -1);
    const cplx den = (q - qi) * (q - qi);
    const CMatrix q2 = r.qJ3 * r.qJ3;
    const CMatrix q2i = r.qJ3_inv * r.qJ3_inv;
    r.casimir = r.J_minus * r.J_plus + (q * q2 + qi * q2i) / den;
    r.casimir_alt = r.J_plus * r.J_minus + (qi * q2 + q * q2i) / den;
    return r;
}

/// [2 J3]_q as a diagonal matrix.
inline CMatrix sym_qnumber_2J3(const UqSl2Rep& r) {
    CMatrix m = CMatrix::Zero(r.k, r.k);
    for (int i = 0; i < r.k; ++i) m(i, i) = sym_qnumber(2LL * (r.j0 + i), r.k);
    return m;
}

inline RelationReport verify_uqsl2_rep(const UqSl2Rep& r, const ToleranceConfig& tol = {}) {
    const int k = r.k;
    const Window w = Window::full(k);
    const CMatrix I = CMatrix::Identity(k, k);
    const cplx q = root_power(k, 1);
    RelationReport rep;
    rep.add("[J+,J-] = [2 J3]_q", commutator_residual(r.J_plus, r.J_minus, 1.0, sym_qnumber_2J3(r), w, tol));
    rep.add("q^J3 J+ q^-J3 = q J+", relation_residual(r.qJ3 * r.J_plus * r.qJ3_inv, q * r.J_plus, w, tol));
    rep.add("q^J3 J- q^-J3 = qbar J-", relation_residual(r.qJ3 * r.J_minus * r.qJ3_inv, std::conj(q) * r.J_minus, w, tol));
    rep.add("q^J3 q^-J3 = 1", relation_residual(r.qJ3 * r.qJ3_inv, I, w, tol));
    rep.add("q^-J3 q^J3 = 1", relation_residual(r.qJ3_inv * r.qJ3, I, w, tol));
    rep.add("(q^J3)^k = 1", relation_residual(mat_pow(r.qJ3, k), I, w, tol));

    const CMatrix Jmk = mat_pow(r.J_minus, k);
    const CMatrix Jpk = mat_pow(r.J_plus, k);
    const double sm = std::max(std::pow(r.J_minus.norm(), k), 1.0);
    const double sp = std::max(std::pow(r.J_plus.norm(), k), 1.0);
    const bool A = r.rep_type == RepType::cyclic;
    const bool B = r.rep_type != RepType::nilpotent;
    if (A)
        rep.add("J-^k = 1", relation_residual(Jmk, I, w, tol));
    else
        rep.add("J-^k = 0", vanishing_residual(Jmk, sm, w, tol));
    if (B)
        rep.add("J+^k = 1", relation_residual(Jpk, I, w, tol));
    else
        rep.add("J+^k = 0", vanishing_residual(Jpk, sp, w, tol));

    rep.add("Casimir: J-J+ form = J+J- form", relation_residual(r.casimir, r.casimir_alt, w, tol));
    rep.add("[J^2, J+] = 0 (J^2 J+ = J+ J^2)", relation_residual(r.casimir * r.J_plus, r.J_plus * r.casimir, w, tol));
    rep.add("[J^2, J-] = 0 (J^2 J- = J- J^2)", relation_residual(r.casimir * r.J_minus, r.J_minus * r.casimir, w, tol));
    rep.add("[J^2, q^J3] = 0", relation_residual(r.casimir * r.qJ3, r.qJ3 * r.casimir, w, tol));
    return rep;
}

/// W_k relations with X+- = J+-, N = J3, K = q^J3 and f_s = -[2s]_q.
/// [N, X+-] = +-X+- is checked on the open chain; the wrap edge of
/// cyclic and semi-periodic types shifts J3 by -(k-1), i.e. by +1 mod k.
inline RelationReport verify_uqsl2_embedding(const UqSl2Rep& r, const ToleranceConfig& tol = {}) {
    const int k = r.k;
    const Window w = Window::full(k);
    const cplx q = root_power(k, 1);
    const CMatrix& Xm = r.J_minus;
    const CMatrix& Xp = r.J_plus;
    const CMatrix& N = r.J3;
    const CMatrix& K = r.qJ3;
    RelationReport rep = verify_uqsl2_rep(r, tol);

    // Projectors from K, grade of |m> is (j0+m) mod k.
    std::vector<CMatrix> P;
    std::vector<CMatrix> Kp{CMatrix::Identity(k, k)};
    for (int t = 1; t < k; ++t) Kp.push_back(Kp.back() * K);
    for (int s = 0; s < k; ++s) {
        CMatrix Ps = CMatrix::Zero(k, k);
        for (int t = 0; t < k; ++t) Ps += root_power(k, -static_cast<long long>(s) * t) * Kp[static_cast<size_t>(t)];
        P.push_back(Ps / static_cast<double>(k));
    }
    CMatrix rhs = CMatrix::Zero(k, k);
    for (int s = 0; s < k; ++s) rhs += -sine_ratio(s, k) * P[static_cast<size_t>(s)];
    rep.add("[X-,X+] = sum_s -[2s]_q Pi_s", commutator_residual(Xm, Xp, 1.0, rhs, w, tol));

    CMatrix sum = CMatrix::Zero(k, k);
    for (const auto& Ps : P) sum += Ps;
    rep.add("sum_s Pi_s = 1", relation_residual(sum, CMatrix::Identity(k, k), w, tol));
    for (int s = 0; s < k; ++s) {
        const int sm = (s + k - 1) % k;
        rep.add("Pi_" + std::to_string(s) + " X+ = X+ Pi_" + std::to_string(sm),
                scaled_residual(P[static_cast<size_t>(s)] * Xp, Xp * P[static_cast<size_t>(sm)], Xp.norm(), w, tol));
    }

    // Open chain and wrap edge split for [N, X+-].
    CMatrix open_p = Xp, open_m = Xm, wrap_p = CMatrix::Zero(k, k), wrap_m = CMatrix::Zero(k, k);
    open_p(0, k - 1) = 0.0;
    open_m(k - 1, 0) = 0.0;
    wrap_p(0, k - 1) = Xp(0, k - 1);
    wrap_m(k - 1, 0) = Xm(k - 1, 0);
    rep.add("[N,X+] = +X+ (open chain)", relation_residual(q_commutator(N, open_p, 1.0), open_p, w, tol));
    rep.add("[N,X-] = -X- (open chain)", relation_residual(q_commutator(N, open_m, 1.0), -open_m, w, tol));
    {
        // On the wrap edge [N,X+] = -(k-1) X+ = X+ (mod k) and likewise for X-.
        const CMatrix cp = q_commutator(N, wrap_p, 1.0);
        const CMatrix cm = q_commutator(N, wrap_m, 1.0);
        rep.add("[N,X+] = (1-k) X+ on the wrap edge", relation_residual(cp, double(1 - k) * wrap_p, w, tol));
        rep.add("[N,X-] = (k-1) X- on the wrap edge", relation_residual(cm, double(k - 1) * wrap_m, w, tol));
    }
    rep.add("K X+ = q X+ K", scaled_residual(K * Xp, q * (Xp * K), Xp.norm(), w, tol));
    rep.add("K X- = qbar X- K", scaled_residual(K * Xm, std::conj(q) * (Xm * K), Xm.norm(), w, tol));
    rep.add("K N = N K", relation_residual(K * N, N * K, w, tol));
    rep.add("K^k = 1", relation_residual(mat_pow(K, k), CMatrix::Identity(k, k), w, tol));
    return rep;
}

}  // namespace wksusy
