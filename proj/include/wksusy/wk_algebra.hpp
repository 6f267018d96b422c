#pragma once

#include <cmath>
#include <cstdio>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "wksusy/graded_fock.hpp"
#include "wksusy/report.hpp"

namespace wksusy {

// Model families. Each one yields f_s(n) for every integer n, so sums that
// reach below n = 0 stay defined; CustomTable covers only its stored range.
struct PerSectorConstants {
    std::vector<double> f;  // f_0..f_{k-1}
};
struct CLambda {
    std::vector<double> c;  // c_0..c_{k-1}, f_s = sum_t q^{st} c_t
};
struct LinearG {
    double a = 0.0;
    double b = 1.0;
};
struct UqSl2 {};
struct CustomTable {
    int n_min = 0;
    std::vector<std::vector<double>> f;  // f[s][n - n_min]
};

class StructureSpec {
public:
    using Variant = std::variant<PerSectorConstants, CLambda, LinearG, UqSl2, CustomTable>;

    static StructureSpec oscillator(int k) {
        return StructureSpec(k, PerSectorConstants{std::vector<double>(static_cast<size_t>(k), 1.0)}, "oscillator");
    }
    static StructureSpec per_sector(std::vector<double> f) {
        const int k = static_cast<int>(f.size());
        return StructureSpec(k, PerSectorConstants{std::move(f)}, "per_sector");
    }
    static StructureSpec c_lambda(std::vector<double> c) {
        const int k = static_cast<int>(c.size());
        return StructureSpec(k, CLambda{std::move(c)}, "c_lambda");
    }
    /// c_0 = 1, c_1 = c_{k-1} = c, all other c_t = 0. Keeps every f_s real.
    static StructureSpec c_lambda_symmetric(int k, double c) {
        std::vector<double> cs(static_cast<size_t>(std::max(k, 2)), 0.0);
        cs[0] = 1.0;
        cs[1] = c;
        cs[static_cast<size_t>(k - 1)] = c;
        return c_lambda(std::move(cs));
    }
    static StructureSpec linear(int k, double a, double b) { return StructureSpec(k, LinearG{a, b}, "linear"); }
    static StructureSpec uq_sl2(int k) { return StructureSpec(k, UqSl2{}, "uq_sl2"); }
    static StructureSpec custom(int k, int n_min, std::vector<std::vector<double>> table) {
        if (static_cast<int>(table.size()) != k) throw ConfigurationError("custom table needs one row per grade");
        for (const auto& row : table)
            if (row.empty() || row.size() != table.front().size())
                throw ConfigurationError("custom table rows must be non-empty and of equal length");
        return StructureSpec(k, CustomTable{n_min, std::move(table)}, "custom");
    }

    int k() const noexcept { return k_; }
    const Variant& variant() const noexcept { return v_; }
    const std::string& model_name() const noexcept { return name_; }

    /// f_s(n); the grade is taken mod k.
    double f(int s, long long n) const {
        const int g = ((s % k_) + k_) % k_;
        return std::visit([&](const auto& m) { return eval(m, g, n); }, v_);
    }

    bool s_independent() const {
        if (std::holds_alternative<LinearG>(v_)) return true;
        for (int s = 1; s < k_; ++s)
            for (long long n = -2; n < 4; ++n)
                if (!in_range(s, n)) continue;
                else if (std::abs(f(s, n) - f(0, n)) > 1e-14) return false;
        return true;
    }

    /// True when all f_s(n) are 1.
    bool is_unit() const {
        if (auto* p = std::get_if<PerSectorConstants>(&v_)) {
            for (double x : p->f)
                if (x != 1.0) return false;
            return true;
        }
        if (auto* g = std::get_if<LinearG>(&v_)) return g->a == 0.0 && g->b == 1.0;
        return false;
    }

    /// Real amplitudes are mandatory for every family except the quantum
    /// group one, whose structure function is negative for some k.
    bool unitary_required() const noexcept { return !std::holds_alternative<UqSl2>(v_); }

private:
    StructureSpec(int k, Variant v, std::string name) : k_(k), v_(std::move(v)), name_(std::move(name)) {
        if (k_ < 2) throw DimensionError("grading order k must be >= 2");
        validate();
    }

    void validate() const {
        if (auto* c = std::get_if<CLambda>(&v_)) {
            for (int s = 0; s < k_; ++s) {
                cplx z{0.0, 0.0};
                for (int t = 0; t < k_; ++t) z += root_power(k_, static_cast<long long>(s) * t) * c->c[static_cast<size_t>(t)];
                if (std::abs(z.imag()) > 1e-12)
                    throw ConfigurationError("c_lambda coefficients give a non-real f_" + std::to_string(s));
            }
        }
    }

    bool in_range(int s, long long n) const {
        if (auto* t = std::get_if<CustomTable>(&v_)) {
            (void)s;
            return n >= t->n_min && n < t->n_min + static_cast<long long>(t->f.front().size());
        }
        return true;
    }

    double eval(const PerSectorConstants& m, int s, long long) const { return m.f[static_cast<size_t>(s)]; }
    double eval(const CLambda& m, int s, long long) const {
        cplx z{0.0, 0.0};
        for (int t = 0; t < k_; ++t) z += root_power(k_, static_cast<long long>(s) * t) * m.c[static_cast<size_t>(t)];
        return z.real();
    }
    double eval(const LinearG& m, int, long long n) const { return m.a * static_cast<double>(n) + m.b; }
    double eval(const UqSl2&, int s, long long) const { return -sine_ratio(s, k_); }
    double eval(const CustomTable& m, int s, long long n) const {
        const long long i = n - m.n_min;
        const auto& row = m.f[static_cast<size_t>(s)];
        if (i < 0 || i >= static_cast<long long>(row.size()))
            throw ModelDomainError(s, static_cast<int>(n),
                                   "custom table has no entry for f_" + std::to_string(s) + "(" + std::to_string(n) + ")");
        return row[static_cast<size_t>(i)];
    }

    int k_;
    Variant v_;
    std::string name_;
};

/// F_s(n) for s = 0..k-1, n = 0..d.
class StructureFunctionTable {
public:
    StructureFunctionTable(int k, int d) : k_(k), d_(d), F_(static_cast<size_t>(k), std::vector<double>(static_cast<size_t>(d + 1), 0.0)) {}

    int k() const noexcept { return k_; }
    int d() const noexcept { return d_; }
    double operator()(int s, int n) const {
        if (n < 0 || n > d_) throw IndexError("structure function level " + std::to_string(n) + " out of range");
        return F_[static_cast<size_t>(((s % k_) + k_) % k_)][static_cast<size_t>(n)];
    }
    double& at(int s, int n) { return F_[static_cast<size_t>(s)][static_cast<size_t>(n)]; }

private:
    int k_;
    int d_;
    std::vector<std::vector<double>> F_;
};

/// Closed form F_s(n) = sum_{m<n} f_{(s-n+m) mod k}(m).
inline double structure_function_closed_form(const StructureSpec& spec, int s, int n) {
    double acc = 0.0;
    for (int m = 0; m < n; ++m) acc += spec.f(s - n + m, m);
    return acc;
}

/// Walks each chain (s0, 0) -> (s0+1, 1) -> ... using F_{s+1}(n+1) = F_s(n) + f_s(n).
inline StructureFunctionTable solve_structure_function(const StructureSpec& spec, const GradedBasis& basis) {
    if (spec.k() != basis.k()) throw DimensionError("spec and basis disagree on k");
    const int k = basis.k();
    const int d = basis.d();
    StructureFunctionTable T(k, d);
    for (int origin = 0; origin < k; ++origin) {
        double F = 0.0;
        int s = origin;
        T.at(s, 0) = 0.0;
        for (int n = 0; n < d; ++n) {
            F += spec.f(s, n);
            s = (s + 1) % k;
            T.at(s, n + 1) = F;
        }
    }
    return T;
}

/// Largest depth (<= d_max) for which every amplitude used by the
/// generators is non-negative, i.e. F_s(n) >= 0 for n <= depth-1.
inline int admissible_depth(const StructureSpec& spec, int d_max) {
    const GradedBasis b(spec.k(), d_max);
    const auto T = solve_structure_function(spec, b);
    for (int n = 1; n <= d_max; ++n)
        for (int s = 0; s < spec.k(); ++s)
            if (T(s, n) < -1e-12) return n;
    return d_max;
}

struct WkGenerators {
    GradedBasis basis;
    OperatorMatrix X_minus;
    OperatorMatrix X_plus;
    OperatorMatrix N;
    OperatorMatrix K;
    std::vector<OperatorMatrix> projectors;
    StructureSpec spec;
    StructureFunctionTable table;
    /// False only when complex amplitudes were needed (X+ is then X-^T).
    bool hermitian = true;
};

/// sqrt(F) with negative F either rejected or mapped to the principal branch.
inline cplx structure_amplitude(double F, int s, int n, bool unitary_required) {
    const double guard = 1e-12 * (1.0 + std::abs(F));
    if (F >= 0.0) return {std::sqrt(F), 0.0};
    if (F > -guard) return {0.0, 0.0};
    if (unitary_required)
        throw ModelDomainError(s, n, "structure function F_" + std::to_string(s) + "(" + std::to_string(n) +
                                         ") = " + std::to_string(F) + " is negative");
    return std::sqrt(cplx(F, 0.0));
}

inline std::vector<OperatorMatrix> build_projectors(const OperatorMatrix& K, int k) {
    const GradedBasis& b = K.basis();
    if (b.k() != k) throw DimensionError("projector order differs from basis grading");
    const Eigen::Index dim = b.dim();
    const CMatrix I = CMatrix::Identity(dim, dim);
    const bool diagonal = (K.matrix() - CMatrix(K.matrix().diagonal().asDiagonal())).norm() == 0.0;
    std::vector<CMatrix> Kp;
    Kp.reserve(static_cast<size_t>(k + 1));
    Kp.push_back(I);
    for (int t = 1; t <= k; ++t) {
        if (diagonal)
            Kp.push_back(CMatrix(Kp.back().diagonal().cwiseProduct(K.matrix().diagonal()).asDiagonal()));
        else
            Kp.push_back(Kp.back() * K.matrix());
    }
    if ((Kp[static_cast<size_t>(k)] - I).norm() > 1e-12 * std::sqrt(static_cast<double>(dim)))
        throw GradingError("K^k differs from the identity");
    std::vector<OperatorMatrix> out;
    for (int s = 0; s < k; ++s) {
        CMatrix P = CMatrix::Zero(dim, dim);
        for (int t = 0; t < k; ++t) P += root_power(k, -static_cast<long long>(s) * t) * Kp[static_cast<size_t>(t)];
        P /= static_cast<double>(k);
        // Character sums cancel only to rounding; clear the residue.
        P = P.unaryExpr([](cplx z) {
            if (std::abs(z) < 1e-13) return cplx(0.0);
            if (std::abs(z - 1.0) < 1e-13) return cplx(1.0);
            return z;
        });
        out.emplace_back(b, P);
    }
    return out;
}

/// K^t rebuilt from the projectors: sum_s q^{ts} Pi_s.
inline OperatorMatrix grading_power_from_projectors(const std::vector<OperatorMatrix>& P, int t) {
    OperatorMatrix acc = OperatorMatrix::zero(P.front().basis());
    const int k = static_cast<int>(P.size());
    for (int s = 0; s < k; ++s) acc = acc + root_power(k, static_cast<long long>(t) * s) * P[static_cast<size_t>(s)];
    return acc;
}

/// Diagonal operator with entry g(n, s) at |n,s>.
template <class Fn>
OperatorMatrix diagonal_operator(const GradedBasis& b, Fn&& g) {
    CMatrix m = CMatrix::Zero(b.dim(), b.dim());
    for (int s = 0; s < b.k(); ++s)
        for (int n = 0; n < b.d(); ++n) m(b.flat_index(n, s), b.flat_index(n, s)) = g(n, s);
    return {b, m};
}

inline WkGenerators build_generators(const StructureSpec& spec, const GradedBasis& basis) {
    auto table = solve_structure_function(spec, basis);
    const int k = basis.k();
    const int d = basis.d();
    CMatrix Xm = CMatrix::Zero(basis.dim(), basis.dim());
    CMatrix Xp = CMatrix::Zero(basis.dim(), basis.dim());
    bool hermitian = true;
    for (int s = 0; s < k; ++s) {
        for (int n = 1; n < d; ++n) {
            const int sm = basis.wrap(s - 1);
            const cplx a = structure_amplitude(table(s, n), s, n, spec.unitary_required());
            if (a.imag() != 0.0) hermitian = false;
            Xm(basis.flat_index(n - 1, sm), basis.flat_index(n, s)) = a;
        }
        for (int n = 0; n + 1 < d; ++n) {
            const int sp = basis.wrap(s + 1);
            const cplx a = structure_amplitude(table(sp, n + 1), sp, n + 1, spec.unitary_required());
            Xp(basis.flat_index(n + 1, sp), basis.flat_index(n, s)) = a;
        }
    }
    OperatorMatrix K = diagonal_operator(basis, [&](int, int s) { return root_power(k, s); });
    auto projectors = build_projectors(K, k);
    return WkGenerators{basis,
                        OperatorMatrix(basis, Xm),
                        OperatorMatrix(basis, Xp),
                        diagonal_operator(basis, [](int n, int) { return cplx(n, 0.0); }),
                        K,
                        std::move(projectors),
                        spec,
                        std::move(table),
                        hermitian};
}

/// sum_s f_s(N) Pi_s, assembled with the projectors built from K.
inline OperatorMatrix structure_rhs(const WkGenerators& g) {
    OperatorMatrix acc = OperatorMatrix::zero(g.basis);
    for (int s = 0; s < g.basis.k(); ++s) {
        auto fN = diagonal_operator(g.basis, [&](int n, int) { return cplx(g.spec.f(s, n), 0.0); });
        acc = acc + fN * g.projectors[static_cast<size_t>(s)];
    }
    return acc;
}

inline RelationReport verify_projectors(const std::vector<OperatorMatrix>& P, const Window& w,
                                        const ToleranceConfig& tol) {
    RelationReport rep;
    const int k = static_cast<int>(P.size());
    const GradedBasis& b = P.front().basis();
    OperatorMatrix sum = OperatorMatrix::zero(b);
    for (const auto& p : P) sum = sum + p;
    rep.add("sum_s Pi_s = 1", relation_residual(sum, OperatorMatrix::identity(b), w, tol));
    for (int s = 0; s < k; ++s) {
        const auto& Ps = P[static_cast<size_t>(s)];
        rep.add("Pi_" + std::to_string(s) + " hermitean", relation_residual(Ps.dagger(), Ps, w, tol));
        for (int t = 0; t < k; ++t) {
            const auto& Pt = P[static_cast<size_t>(t)];
            const std::string name = "Pi_" + std::to_string(s) + " Pi_" + std::to_string(t);
            if (s == t)
                rep.add(name + " = Pi_" + std::to_string(s), relation_residual(Ps * Pt, Ps, w, tol));
            else
                rep.add(name + " = 0",
                        vanishing_residual((Ps * Pt).matrix(), Ps.matrix().norm() * Pt.matrix().norm(), w, tol));
        }
    }
    return rep;
}

inline RelationReport verify_wk_relations(const WkGenerators& g, const ToleranceConfig& tol = {}) {
    const GradedBasis& b = g.basis;
    const int k = b.k();
    const Window w = interior_window(b, 1);
    const RootOfUnity q(k);
    const auto& Xm = g.X_minus;
    const auto& Xp = g.X_plus;
    const auto& N = g.N;
    const auto& K = g.K;
    RelationReport rep;

    rep.add("[X-,X+] = sum_s f_s(N) Pi_s", relation_residual(q_commutator(Xm, Xp, 1.0), structure_rhs(g), w, tol));
    rep.add("[N,X-] = -X-", relation_residual(q_commutator(N, Xm, 1.0), Xm * cplx(-1.0), w, tol));
    rep.add("[N,X+] = +X+", relation_residual(q_commutator(N, Xp, 1.0), Xp, w, tol));
    // [K,X+]_q = 0 and [K,X-]_qbar = 0, compared two-sided.
    rep.add("K X+ = q X+ K", relation_residual(K * Xp, q.q * (Xp * K), w, tol));
    rep.add("K X- = qbar X- K", relation_residual(K * Xm, q.qbar * (Xm * K), w, tol));
    rep.add("K N = N K", relation_residual(K * N, N * K, w, tol));
    rep.add("K^k = 1", relation_residual(K.pow(k), OperatorMatrix::identity(b), w, tol));
    rep.add("K unitary", relation_residual(K.dagger() * K, OperatorMatrix::identity(b), w, tol));
    rep.add("N hermitean", relation_residual(N.dagger(), N, w, tol));
    if (g.hermitian)
        rep.add("X+ = X-^dagger", relation_residual(Xm.dagger(), Xp, w, tol));
    else
        rep.add("X+ = X-^T", relation_residual(OperatorMatrix(b, Xm.matrix().transpose()), Xp, w, tol));

    for (int s = 0; s < k; ++s) {
        const auto& Ps = g.projectors[static_cast<size_t>(s)];
        const auto& Psm = g.projectors[static_cast<size_t>(b.wrap(s - 1))];
        const std::string ss = std::to_string(s);
        rep.add("Pi_" + ss + " X+ = X+ Pi_" + std::to_string(b.wrap(s - 1)), relation_residual(Ps * Xp, Xp * Psm, w, tol));
        rep.add("X- Pi_" + ss + " = Pi_" + std::to_string(b.wrap(s - 1)) + " X-", relation_residual(Xm * Ps, Psm * Xm, w, tol));
    }
    for (int t = 0; t < k; ++t)
        rep.add("K^" + std::to_string(t) + " = sum_s q^{ts} Pi_s",
                relation_residual(K.pow(t), grading_power_from_projectors(g.projectors, t), w, tol));
    rep.append(verify_projectors(g.projectors, w, tol));

    // Pi_s acting on the K-eigenvectors of eigenvalue q^t.
    for (int t = 0; t < k; ++t) {
        CMatrix phi = CMatrix::Zero(b.dim(), b.d());
        for (int n = 0; n < b.d(); ++n) phi(b.flat_index(n, t), n) = 1.0;
        double worst = 0.0;
        for (int s = 0; s < k; ++s) {
            const CMatrix lhs = g.projectors[static_cast<size_t>(s)].matrix() * phi;
            const CMatrix rhs = (s == t) ? phi : CMatrix::Zero(b.dim(), b.d());
            worst = std::max(worst, (lhs - rhs).norm() / phi.norm());
        }
        rep.add("Pi_s phi_" + std::to_string(t) + " = delta(s," + std::to_string(t) + ") phi_" + std::to_string(t),
                worst, worst <= tol.rel_tol);
    }
    return rep;
}

/// Catalog grid: oscillator, C_lambda with c in {0, +-0.5}, linear G with
/// (a,b) in {(0,1), (-0.1,2), (0.1,1)}, and the quantum group family.
inline std::vector<StructureSpec> catalog_models(int k) {
    return {StructureSpec::oscillator(k),
            StructureSpec::c_lambda_symmetric(k, 0.0),
            StructureSpec::c_lambda_symmetric(k, 0.5),
            StructureSpec::c_lambda_symmetric(k, -0.5),
            StructureSpec::linear(k, 0.0, 1.0),
            StructureSpec::linear(k, -0.1, 2.0),
            StructureSpec::linear(k, 0.1, 1.0),
            StructureSpec::uq_sl2(k)};
}

inline std::string describe(const StructureSpec& spec) {
    char buf[160];
    if (auto* c = std::get_if<CLambda>(&spec.variant())) {
        std::snprintf(buf, sizeof buf, "c_lambda(c1=%g)", c->c.size() > 1 ? c->c[1] : 0.0);
        return buf;
    }
    if (auto* l = std::get_if<LinearG>(&spec.variant())) {
        std::snprintf(buf, sizeof buf, "linear(a=%g,b=%g)", l->a, l->b);
        return buf;
    }
    return spec.model_name();
}

}  // namespace wksusy
