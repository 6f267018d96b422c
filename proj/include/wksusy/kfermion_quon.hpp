#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "wksusy/grassmann.hpp"
#include "wksusy/wk_algebra.hpp"

namespace wksusy {

/// k x k k-fermion matrices on |0>..|k-1>:
/// f-|s> = |s-1>, f+|s> = [[s+1]]_q |s+1>; the dag members are true adjoints.
struct KFermionOps {
    CMatrix f_minus, f_plus, f_minus_dag, f_plus_dag, N_f;
    int k;
    RootOfUnity q;
    RelationReport report;

    /// f- + f+^{k-1}/[[k-1]]_q!
    CMatrix cyclic() const { return f_minus + mat_pow(f_plus, k - 1) / qfactorial_root(k - 1, k); }
    /// [f-, f+] = diag(q^s).
    CMatrix grading() const { return q_commutator(f_minus, f_plus, 1.0); }
};

inline KFermionOps build_kfermions(int k, const ToleranceConfig& tol = {.rel_tol = 1e-12, .abs_floor = 1e-12}) {
    if (k < 2) throw DimensionError("k-fermion order must be >= 2");
    CMatrix fm = CMatrix::Zero(k, k);
    CMatrix fp = CMatrix::Zero(k, k);
    CMatrix N = CMatrix::Zero(k, k);
    for (int s = 0; s < k; ++s) {
        if (s >= 1) fm(s - 1, s) = 1.0;
        if (s + 1 < k) fp(s + 1, s) = qint_root(s + 1, k);
        N(s, s) = static_cast<double>(s);
    }
    KFermionOps o{fm, fp, fm.adjoint(), fp.adjoint(), N, k, RootOfUnity(k), {}};

    const Window w = Window::full(k);
    const CMatrix I = CMatrix::Identity(k, k);
    auto& r = o.report;
    r.add("[f-,f+]_q = 1", relation_residual(q_commutator(fm, fp, o.q.q), I, w, tol));
    r.add("f-^k = 0", vanishing_residual(mat_pow(fm, k), std::pow(fm.norm(), k), w, tol));
    r.add("f+^k = 0", vanishing_residual(mat_pow(fp, k), std::pow(fp.norm(), k), w, tol));
    r.add("[N_f,f-] = -f-", relation_residual(q_commutator(N, fm, 1.0), -fm, w, tol));
    r.add("[N_f,f+] = +f+", relation_residual(q_commutator(N, fp, 1.0), fp, w, tol));
    r.add("[f+dag,f-dag]_qbar = 1", relation_residual(q_commutator(o.f_plus_dag, o.f_minus_dag, o.q.qbar), I, w, tol));
    r.add("[N_f,f-dag] = +f-dag", relation_residual(q_commutator(N, o.f_minus_dag, 1.0), o.f_minus_dag, w, tol));
    r.add("[N_f,f+dag] = -f+dag", relation_residual(q_commutator(N, o.f_plus_dag, 1.0), -o.f_plus_dag, w, tol));
    r.add("(f-dag)^k = 0", vanishing_residual(mat_pow(o.f_minus_dag, k), std::pow(fm.norm(), k), w, tol));
    r.add("(f+dag)^k = 0", vanishing_residual(mat_pow(o.f_plus_dag, k), std::pow(fp.norm(), k), w, tol));
    r.add("(f- + f+^{k-1}/[[k-1]]_q!)^k = 1", relation_residual(mat_pow(o.cyclic(), k), I, w, tol));

    CMatrix Kdiag = CMatrix::Zero(k, k);
    for (int s = 0; s < k; ++s) Kdiag(s, s) = root_power(k, s);
    r.add("[f-,f+] = q^{N_f}", relation_residual(o.grading(), Kdiag, w, tol));

    // The mixed relations with q^{-+1/2} live on two generators:
    // f+ = theta, f- = d_theta, f-dag = thetabar, f+dag = d_thetabar.
    const auto bg = bi_grassmann_ops(k);
    const Window W = Window::full(k * k);
    r.add("f- f+dag - q^{-1/2} f+dag f- = 0 (two-generator realization)",
          relation_residual(bg.d_theta * bg.d_thetabar, root_power(2 * k, -1) * (bg.d_thetabar * bg.d_theta), W, tol));
    r.add("f+ f-dag - q^{+1/2} f-dag f+ = 0 (two-generator realization)",
          relation_residual(bg.theta * bg.thetabar, root_power(2 * k, 1) * (bg.thetabar * bg.theta), W, tol));
    return o;
}

/// Generic Q-uon: a-|n> = [[n]]^alpha |n-1>, a+|n> = [[n+1]]^beta |n+1>,
/// principal-branch powers, alpha + beta = 1.
struct QuonAlgebra {
    cplx Q;
    double alpha = 0.5;
    double beta = 0.5;
    int depth;
    CMatrix a_minus, a_plus, N_a;

    QuonAlgebra(cplx Q_, int depth_, double alpha_ = 0.5, double beta_ = 0.5)
        : Q(Q_), alpha(alpha_), beta(beta_), depth(depth_) {
        if (std::abs(Q) == 0.0) throw ConfigurationError("Q must be non-zero");
        if (std::abs(alpha + beta - 1.0) > 1e-14 || alpha < 0.0 || beta < 0.0)
            throw ConfigurationError("Fock exponents must be non-negative and sum to 1");
        if (depth < 2) throw DimensionError("Q-uon depth must be >= 2");
        a_minus = CMatrix::Zero(depth, depth);
        a_plus = CMatrix::Zero(depth, depth);
        N_a = CMatrix::Zero(depth, depth);
        for (int n = 0; n < depth; ++n) {
            N_a(n, n) = static_cast<double>(n);
            if (n >= 1) a_minus(n - 1, n) = cpow_real(qint(n, Q), alpha);
            if (n + 1 < depth) a_plus(n + 1, n) = cpow_real(qint(n + 1, Q), beta);
        }
    }

    static cplx cpow_real(cplx z, double p) {
        if (p == 0.0) return 1.0;
        if (p == 1.0) return z;
        if (z == cplx(0.0)) return 0.0;
        return std::pow(z, p);
    }

    RelationReport verify(const ToleranceConfig& tol = {}) const {
        RelationReport r;
        const Window w = Window(interior_mask(1));
        r.add("[a-,a+]_Q = 1", relation_residual(q_commutator(a_minus, a_plus, Q), CMatrix::Identity(depth, depth), w, tol));
        r.add("[N_a,a-] = -a-", relation_residual(q_commutator(N_a, a_minus, 1.0), -a_minus, w, tol));
        r.add("[N_a,a+] = +a+", relation_residual(q_commutator(N_a, a_plus, 1.0), a_plus, w, tol));
        return r;
    }

    Eigen::VectorXd interior_mask(int margin) const {
        Eigen::VectorXd m = Eigen::VectorXd::Zero(depth);
        for (int n = 0; n <= depth - 1 - margin; ++n) m(n) = 1.0;
        return m;
    }
};

struct QuonLimitPoint {
    double epsilon;
    double residual;
};

struct QuonLimitReport {
    int k;
    int depth;
    std::vector<QuonLimitPoint> points;
    bool strictly_decreasing;
    /// log(r_i/r_{i+1}) / log(eps_i/eps_{i+1}) for consecutive points.
    std::vector<double> orders;
};

/// b+- = a+-^k / sqrt([[k]]_Q!) at Q = q e^eps; r(eps) = residual of [b-,b+] = 1.
inline QuonLimitReport quon_limit_study(int k, int depth, const std::vector<double>& epsilons) {
    if (epsilons.empty()) throw UsageError("no epsilon values given");
    for (size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0)) throw UsageError("epsilon values must be positive");
        if (i > 0 && !(epsilons[i] < epsilons[i - 1])) throw UsageError("epsilon values must decrease");
    }
    if (depth < 2 * k + 2) throw InsufficientDepthError("Q-uon depth too small for k-th powers");
    QuonLimitReport rep{k, depth, {}, true, {}};
    for (double eps : epsilons) {
        const cplx Q = root_power(k, 1) * std::exp(eps);
        const cplx fact = qfactorial(k, Q);
        if (std::abs(fact) < 1e-300) throw UnderflowError("[[k]]_Q! underflows at epsilon " + std::to_string(eps));
        const QuonAlgebra A(Q, depth);
        const cplx norm = std::sqrt(fact);
        const CMatrix bm = mat_pow(A.a_minus, k) / norm;
        const CMatrix bp = mat_pow(A.a_plus, k) / norm;
        const Window w(A.interior_mask(k));
        const double r = relation_residual(q_commutator(bm, bp, 1.0), CMatrix::Identity(depth, depth), w).residual;
        rep.points.push_back({eps, r});
    }
    for (size_t i = 1; i < rep.points.size(); ++i) {
        const auto& a = rep.points[i - 1];
        const auto& b = rep.points[i];
        if (!(b.residual < a.residual)) rep.strictly_decreasing = false;
        rep.orders.push_back(std::log(a.residual / b.residual) / std::log(a.epsilon / b.epsilon));
    }
    return rep;
}

/// Kronecker product laid out like the graded basis: index s*d + n.
inline CMatrix graded_kron(const CMatrix& on_grade, const CMatrix& on_level) {
    const Eigen::Index k = on_grade.rows();
    const Eigen::Index d = on_level.rows();
    CMatrix out = CMatrix::Zero(k * d, k * d);
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b)
            if (on_grade(a, b) != cplx(0.0)) out.block(a * d, b * d, d, d) = on_grade(a, b) * on_level;
    return out;
}

struct RealizedGenerators {
    WkGenerators gen;
    OperatorMatrix b_minus;
    OperatorMatrix b_plus;
    OperatorMatrix cyclic;  // f- + f+^{k-1}/[[k-1]]_q! on the full space
    KFermionOps fermions;
    RelationReport report;
};

/// X- = b- C, X+ = b+ C^{k-1}, K = [f-,f+] with C the cyclic k-fermion
/// combination. The boson pieces act per grade t as
///   b(t)-|n> = sqrt F_{t+1}(n) |n-1>,  b(t)+|n> = sqrt F_t(n+1) |n+1>,
/// which reproduces the abstract representation for every model.
inline RealizedGenerators build_realized_generators(const StructureSpec& spec, const GradedBasis& basis,
                                                   const ToleranceConfig& tol = {}) {
    const int k = basis.k();
    const int d = basis.d();
    const auto F = solve_structure_function(spec, basis);
    auto fk = build_kfermions(k);

    CMatrix bm = CMatrix::Zero(basis.dim(), basis.dim());
    CMatrix bp = CMatrix::Zero(basis.dim(), basis.dim());
    bool hermitian = true;
    for (int t = 0; t < k; ++t) {
        for (int n = 1; n < d; ++n) {
            const cplx a = structure_amplitude(F(t + 1, n), basis.wrap(t + 1), n, spec.unitary_required());
            if (a.imag() != 0.0) hermitian = false;
            bm(basis.flat_index(n - 1, t), basis.flat_index(n, t)) = a;
        }
        for (int n = 0; n + 1 < d; ++n)
            bp(basis.flat_index(n + 1, t), basis.flat_index(n, t)) = structure_amplitude(F(t, n + 1), t, n + 1, spec.unitary_required());
    }
    const CMatrix Id = CMatrix::Identity(d, d);
    const CMatrix C = graded_kron(fk.cyclic(), Id);
    const CMatrix Xm = bm * C;
    const CMatrix Xp = bp * mat_pow(C, k - 1);
    const CMatrix K = graded_kron(fk.grading(), Id);

    OperatorMatrix Kop(basis, K);
    auto projectors = build_projectors(Kop, k);
    WkGenerators g{basis,
                   OperatorMatrix(basis, Xm),
                   OperatorMatrix(basis, Xp),
                   diagonal_operator(basis, [](int n, int) { return cplx(n, 0.0); }),
                   Kop,
                   std::move(projectors),
                   spec,
                   F,
                   hermitian};

    RelationReport rep;
    const Window w = interior_window(basis, 1);
    const auto abstract = build_generators(spec, basis);
    const double scale = std::max(abstract.X_minus.matrix().cwiseAbs().maxCoeff(), 1.0);
    const double dm = max_abs_diff(Xm, abstract.X_minus.matrix()) / scale;
    const double dp = max_abs_diff(Xp, abstract.X_plus.matrix()) / scale;
    const double dk = max_abs_diff(K, abstract.K.matrix());
    rep.add("realized X- = abstract X- (entrywise)", dm, dm <= tol.rel_tol);
    rep.add("realized X+ = abstract X+ (entrywise)", dp, dp <= tol.rel_tol);
    rep.add("realized K = abstract K (entrywise)", dk, dk <= tol.rel_tol);
    if (hermitian) rep.add("X+ = X-^dagger", relation_residual(g.X_minus.dagger(), g.X_plus, w, tol));
    rep.add("C^k = 1", relation_residual(mat_pow(C, k), CMatrix::Identity(basis.dim(), basis.dim()), Window::full(basis.dim()), tol));
    rep.add("[X-,X+] = sum_s f_s(N) Pi_s", relation_residual(q_commutator(g.X_minus, g.X_plus, 1.0), structure_rhs(g), w, tol));
    if (spec.s_independent())
        rep.add("[X-,X+] = [b-,b+]", relation_residual(q_commutator(Xm, Xp, 1.0), q_commutator(bm, bp, 1.0), w, tol));
    CMatrix Cn = CMatrix::Identity(basis.dim(), basis.dim());
    for (int n = 1; n <= k; ++n) {
        Cn = Cn * C;
        for (int s = 0; s < k; ++s) {
            const auto& Ps = g.projectors[static_cast<size_t>(s)].matrix();
            const auto& Psn = g.projectors[static_cast<size_t>(basis.wrap(s + n))].matrix();
            rep.add("Pi_" + std::to_string(s) + " C^" + std::to_string(n) + " = C^" + std::to_string(n) + " Pi_" +
                        std::to_string(basis.wrap(s + n)),
                    relation_residual(Ps * Cn, Cn * Psn, Window::full(basis.dim()), tol));
        }
    }
    return {std::move(g), OperatorMatrix(basis, bm), OperatorMatrix(basis, bp), OperatorMatrix(basis, C), std::move(fk),
            std::move(rep)};
}

}  // namespace wksusy
