#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "wksusy/wk_algebra.hpp"

namespace wksusy {

namespace detail {

/// A * P for a projector that is diagonal in the graded basis.
inline OperatorMatrix times_diag(const OperatorMatrix& A, const OperatorMatrix& P) {
    return {A.basis(), A.matrix() * P.matrix().diagonal().asDiagonal()};
}
inline OperatorMatrix diag_times(const OperatorMatrix& P, const OperatorMatrix& A) {
    return {A.basis(), P.matrix().diagonal().asDiagonal() * A.matrix()};
}

/// Sum of Pi_s over the listed grades (taken mod k).
inline OperatorMatrix projector_sum(const WkGenerators& g, const std::vector<int>& grades) {
    OperatorMatrix acc = OperatorMatrix::zero(g.basis);
    for (int s : grades) acc = acc + g.projectors[static_cast<size_t>(g.basis.wrap(s))];
    return acc;
}

inline std::vector<int> grade_range(int from, int to) {
    std::vector<int> out;
    for (int s = from; s <= to; ++s) out.push_back(s);
    return out;
}

inline std::vector<OperatorMatrix> powers(const OperatorMatrix& A, int up_to) {
    std::vector<OperatorMatrix> out;
    out.push_back(OperatorMatrix::identity(A.basis()));
    for (int m = 1; m <= up_to; ++m) out.push_back(out.back() * A);
    return out;
}

}  // namespace detail

/// H_s(n) for s = 1..k (s = k is grade 0) and n = 0..d.
class SectorHamiltonianTable {
public:
    SectorHamiltonianTable(int k, int d, std::string source_model, bool unit_model)
        : k_(k), d_(d), source_(std::move(source_model)), unit_(unit_model),
          H_(static_cast<size_t>(k), std::vector<double>(static_cast<size_t>(d + 1), 0.0)) {}

    int k() const noexcept { return k_; }
    int d() const noexcept { return d_; }
    const std::string& source_model() const noexcept { return source_; }
    /// True when built from f_s = 1, the oscillator case.
    bool is_oscillator() const noexcept { return unit_; }

    double operator()(int s, int n) const {
        if (n < 0 || n > d_) throw IndexError("sector Hamiltonian level out of range");
        return H_[static_cast<size_t>(((s % k_) + k_) % k_)][static_cast<size_t>(n)];
    }
    double& at(int s, int n) { return H_[static_cast<size_t>(((s % k_) + k_) % k_)][static_cast<size_t>(n)]; }

private:
    int k_;
    int d_;
    std::string source_;
    bool unit_;
    std::vector<std::vector<double>> H_;
};

struct SusyDoublet {
    OperatorMatrix Q_minus;
    OperatorMatrix Q_plus;
    OperatorMatrix H;
    int k;
    RelationReport axiom_report;
    bool hermitian = true;
};

struct HamiltonianBuild {
    OperatorMatrix H;           // diagonal sector form, the reference
    OperatorMatrix H_assembled;  // (k-1)X+X- minus the two double sums
    SectorHamiltonianTable table;
    Residual cross_check;
};

struct SuperchargeBuild {
    OperatorMatrix Q_minus;
    OperatorMatrix Q_plus;
    RelationReport report;
};

inline SuperchargeBuild build_supercharges(const WkGenerators& g, const ToleranceConfig& tol = {}) {
    using detail::diag_times;
    using detail::times_diag;
    const int k = g.basis.k();
    const auto I = OperatorMatrix::identity(g.basis);
    const auto& P = g.projectors;
    OperatorMatrix Qm = times_diag(g.X_minus, I - P[1 % k]);
    OperatorMatrix Qp = times_diag(g.X_plus, I - P[0]);

    RelationReport rep;
    const Window w = interior_window(g.basis, 1);
    rep.add("Q- = (1-Pi_0) X-", relation_residual(Qm, diag_times(I - P[0], g.X_minus), w, tol));
    rep.add("Q+ = (1-Pi_1) X+", relation_residual(Qp, diag_times(I - P[1 % k], g.X_plus), w, tol));
    std::vector<int> lower = detail::grade_range(2, k - 1);
    lower.push_back(0);
    rep.add("Q- = X- (Pi_2 + ... + Pi_{k-1} + Pi_0)",
            relation_residual(Qm, times_diag(g.X_minus, detail::projector_sum(g, lower)), w, tol));
    rep.add("Q+ = X+ (Pi_1 + ... + Pi_{k-1})",
            relation_residual(Qp, times_diag(g.X_plus, detail::projector_sum(g, detail::grade_range(1, k - 1))), w, tol));
    return {std::move(Qm), std::move(Qp), std::move(rep)};
}

/// H_s(n) = (k-1) F_s(n) - sum_{t=2}^{k-1} (t-1) f_t(n-s+t) + (k-1) sum_{t=s}^{k-1} f_t(n-s+t).
inline double sector_energy(const StructureSpec& spec, const StructureFunctionTable& F, int s, int n) {
    const int k = spec.k();
    double h = (k - 1) * F(s % k, n);
    for (int t = 2; t <= k - 1; ++t) h -= (t - 1) * spec.f(t, static_cast<long long>(n) - s + t);
    for (int t = s; t <= k - 1; ++t) h += (k - 1) * spec.f(t, static_cast<long long>(n) - s + t);
    return h;
}

inline SectorHamiltonianTable sector_table(const WkGenerators& g) {
    const int k = g.basis.k();
    const int d = g.basis.d();
    SectorHamiltonianTable T(k, d, g.spec.model_name(), g.spec.is_unit());
    for (int s = 1; s <= k; ++s)
        for (int n = 0; n <= d; ++n) T.at(s, n) = sector_energy(g.spec, g.table, s, n);
    return T;
}

/// sum_{s=1}^{k} H_s(N) Pi_s as a diagonal matrix.
inline OperatorMatrix hamiltonian_from_table(const GradedBasis& b, const SectorHamiltonianTable& T) {
    return diagonal_operator(b, [&](int n, int s) { return cplx(T(s, n), 0.0); });
}

/// Operator f_t(N + shift) on the whole space.
inline OperatorMatrix shifted_f(const WkGenerators& g, int t, int shift) {
    return diagonal_operator(g.basis, [&](int n, int) { return cplx(g.spec.f(t, static_cast<long long>(n) + shift), 0.0); });
}

inline HamiltonianBuild build_hamiltonian_general(const WkGenerators& g, const ToleranceConfig& tol = {}) {
    using detail::times_diag;
    const int k = g.basis.k();
    OperatorMatrix H23 = cplx(k - 1) * (g.X_plus * g.X_minus);
    for (int s = 3; s <= k; ++s)
        for (int t = 2; t <= s - 1; ++t)
            H23 = H23 - cplx(t - 1) * times_diag(shifted_f(g, t, t - s), g.projectors[static_cast<size_t>(s % k)]);
    for (int s = 1; s <= k - 1; ++s)
        for (int t = s; t <= k - 1; ++t)
            H23 = H23 - cplx(t - k) * times_diag(shifted_f(g, t, t - s), g.projectors[static_cast<size_t>(s)]);
    auto T = sector_table(g);
    OperatorMatrix H = hamiltonian_from_table(g.basis, T);
    const Residual r = relation_residual(H23, H, Window::full(g.basis.dim()), tol);
    return {std::move(H), std::move(H23), std::move(T), r};
}

enum class Specialization { oscillator, nonlinear_g, uq_sl2 };

/// Closed forms for the constant-G, unit, and quantum-group cases.
inline OperatorMatrix specialize_hamiltonian(const WkGenerators& g, Specialization which) {
    using detail::times_diag;
    const int k = g.basis.k();
    const auto& P = g.projectors;
    const auto I = OperatorMatrix::identity(g.basis);
    OperatorMatrix H = cplx(k - 1) * (g.X_plus * g.X_minus);
    switch (which) {
        case Specialization::nonlinear_g: {
            if (!g.spec.s_independent()) throw UsageError("constant-G form needs f_s independent of s");
            auto G = [&](int shift) { return shifted_f(g, 0, shift); };
            for (int s = 2; s <= k - 1; ++s) {
                const OperatorMatrix tail = I - detail::projector_sum(g, detail::grade_range(1, s));
                for (int t = 1; t <= s - 1; ++t) H = H - times_diag(G(-t), tail);
            }
            for (int s = 1; s <= k - 1; ++s)
                for (int t = 0; t <= k - s - 1; ++t)
                    H = H + cplx(k - s - t) * times_diag(G(t), P[static_cast<size_t>(s)]);
            return H;
        }
        case Specialization::oscillator: {
            if (!g.spec.is_unit()) throw UsageError("oscillator form needs f_s = 1");
            for (int s = 0; s <= k - 1; ++s)
                H = H + cplx((k - 1) * (s + 1 - 0.5 * k)) * P[static_cast<size_t>((k - s) % k)];
            return H;
        }
        case Specialization::uq_sl2: {
            if (!std::holds_alternative<UqSl2>(g.spec.variant()))
                throw UsageError("quantum-group form needs the uq_sl2 model");
            for (int s = 3; s <= k; ++s)
                for (int t = 2; t <= s - 1; ++t) H = H + cplx((t - 1) * sine_ratio(t, k)) * P[static_cast<size_t>(s % k)];
            for (int s = 1; s <= k - 1; ++s)
                for (int t = s; t <= k - 1; ++t) H = H + cplx((t - k) * sine_ratio(t, k)) * P[static_cast<size_t>(s)];
            return H;
        }
    }
    throw UsageError("unknown specialization");
}

inline RelationReport verify_fractional_axioms(const SusyDoublet& D, const WkGenerators& g,
                                               const ToleranceConfig& tol = {}) {
    using detail::projector_sum;
    using detail::times_diag;
    const int k = D.k;
    const GradedBasis& b = g.basis;
    const Window w = interior_window(b, std::min(k, b.d() - 1));
    const auto& Qm = D.Q_minus;
    const auto& Qp = D.Q_plus;
    const auto& H = D.H;
    const auto& P = g.projectors;
    const auto I = OperatorMatrix::identity(b);
    RelationReport rep;

    const auto Qmp = detail::powers(Qm, k);
    const auto Qpp = detail::powers(Qp, k);
    const auto Xmp = detail::powers(g.X_minus, k);
    const auto Xpp = detail::powers(g.X_plus, k);
    const double nQm = Qm.matrix().norm();
    const double nQp = Qp.matrix().norm();

    if (D.hermitian)
        rep.add("Q+ = Q-^dagger", relation_residual(Qm.dagger(), Qp, w, tol));
    else
        rep.add("Q+ = Q-^T", relation_residual(OperatorMatrix(b, Qm.matrix().transpose()), Qp, w, tol));
    rep.add("Q-^k = 0", vanishing_residual(Qmp[static_cast<size_t>(k)].matrix(), std::pow(nQm, k), w, tol));
    rep.add("Q+^k = 0", vanishing_residual(Qpp[static_cast<size_t>(k)].matrix(), std::pow(nQp, k), w, tol));

    OperatorMatrix lhs = OperatorMatrix::zero(b);
    for (int j = 0; j <= k - 1; ++j)
        lhs = lhs + Qmp[static_cast<size_t>(k - 1 - j)] * (Qp * Qmp[static_cast<size_t>(j)]);
    rep.add("sum_j Q-^{k-1-j} Q+ Q-^j = Q-^{k-2} H", relation_residual(lhs, Qmp[static_cast<size_t>(k - 2)] * H, w, tol));
    rep.add("H Q- = Q- H", relation_residual(H * Qm, Qm * H, w, tol));
    rep.add("H Q+ = Q+ H", relation_residual(H * Qp, Qp * H, w, tol));
    rep.add("H hermitean", relation_residual(H.dagger(), H, w, tol));

    for (int m = 0; m <= k - 1; ++m) {
        const std::string ms = std::to_string(m);
        std::vector<int> lo{0};
        for (int s = m + 1; s <= k - 1; ++s) lo.push_back(s);
        const auto lo_sum = projector_sum(g, lo);
        rep.add("Q-^" + ms + " = X-^" + ms + " (Pi_0 + Pi_{m+1} + ... + Pi_{k-1})",
                relation_residual(Qmp[static_cast<size_t>(m)], times_diag(Xmp[static_cast<size_t>(m)], lo_sum), w, tol));
        rep.add("Q+^" + ms + " = X+^" + ms + " (Pi_1 + ... + Pi_{k-m})",
                relation_residual(Qpp[static_cast<size_t>(m)],
                                  times_diag(Xpp[static_cast<size_t>(m)], projector_sum(g, detail::grade_range(1, k - m))), w, tol));
        rep.add("Q+ Q-^" + ms + " = X+ X-^" + ms + " (1 - Pi_m)(Pi_0 + Pi_{m+1} + ... + Pi_{k-1})",
                relation_residual(Qp * Qmp[static_cast<size_t>(m)],
                                  times_diag(times_diag(g.X_plus * Xmp[static_cast<size_t>(m)], I - P[static_cast<size_t>(m)]), lo_sum),
                                  w, tol));
        rep.add("Q-^" + ms + " Q+ = X-^" + ms + " X+ (1 - Pi_0)(Pi_m + ... + Pi_{k-1})",
                relation_residual(Qmp[static_cast<size_t>(m)] * Qp,
                                  times_diag(times_diag(Xmp[static_cast<size_t>(m)] * g.X_plus, I - P[0]),
                                             projector_sum(g, detail::grade_range(m, k - 1))),
                                  w, tol));
    }
    rep.add("Q+ Q-^{k-1} = X+ X-^{k-1} Pi_0",
            relation_residual(Qp * Qmp[static_cast<size_t>(k - 1)], times_diag(g.X_plus * Xmp[static_cast<size_t>(k - 1)], P[0]), w, tol));
    rep.add("Q-^{k-1} Q+ = X-^{k-1} X+ Pi_{k-1}",
            relation_residual(Qmp[static_cast<size_t>(k - 1)] * Qp,
                              times_diag(Xmp[static_cast<size_t>(k - 1)] * g.X_plus, P[static_cast<size_t>(k - 1)]), w, tol));
    for (int m = 1; m <= k - 2; ++m) {
        const int l = k - 1 - m;
        const std::string name = "Q-^" + std::to_string(m) + " Q+ Q-^" + std::to_string(l) + " = X-^" + std::to_string(m) +
                                 " X+ X-^" + std::to_string(l) + " (Pi_0 + Pi_{k-1})";
        rep.add(name, relation_residual(Qmp[static_cast<size_t>(m)] * Qp * Qmp[static_cast<size_t>(l)],
                                        times_diag(Xmp[static_cast<size_t>(m)] * g.X_plus * Xmp[static_cast<size_t>(l)],
                                                   projector_sum(g, {0, k - 1})),
                                        w, tol));
    }
    return rep;
}

/// Supercharges, the sector-form Hamiltonian, and the full axiom report.
inline SusyDoublet build_doublet(const WkGenerators& g, const ToleranceConfig& tol = {}) {
    auto sc = build_supercharges(g, tol);
    auto hb = build_hamiltonian_general(g, tol);
    SusyDoublet D{std::move(sc.Q_minus), std::move(sc.Q_plus), std::move(hb.H), g.basis.k(), {}, g.hermitian};
    RelationReport rep = sc.report;
    rep.add("H (general assembly) = sum_s H_s Pi_s", hb.cross_check);
    rep.append(verify_fractional_axioms(D, g, tol));
    D.axiom_report = std::move(rep);
    return D;
}

struct DegeneracyLevel {
    double energy;
    int multiplicity;
};

struct DegeneracyPattern {
    std::vector<DegeneracyLevel> levels;
    double truncation_cutoff;

    std::vector<int> multiplicities() const {
        std::vector<int> m;
        for (const auto& l : levels) m.push_back(l.multiplicity);
        return m;
    }
};

/// Groups the diagonal of H within 1e-9 and drops the discard_top highest
/// groups, which the truncation leaves incomplete.
inline DegeneracyPattern degeneracy_pattern(const OperatorMatrix& H, int discard_top) {
    const int k = H.basis().k();
    if (discard_top < 2 * k)
        throw UsageError("discard_top must be at least 2k = " + std::to_string(2 * k));
    const auto spec = diagonal_spectrum(H);
    std::vector<DegeneracyLevel> groups;
    for (const auto& e : spec) {
        if (!groups.empty() && std::abs(e.energy - groups.back().energy) <= 1e-9)
            ++groups.back().multiplicity;
        else
            groups.push_back({e.energy, 1});
    }
    if (static_cast<int>(groups.size()) < discard_top + 3)
        throw InsufficientDepthError("only " + std::to_string(groups.size()) + " levels, need " +
                                     std::to_string(discard_top + 3));
    const size_t keep = groups.size() - static_cast<size_t>(discard_top);
    const double cutoff = groups[keep].energy;
    groups.resize(keep);
    return {std::move(groups), cutoff};
}

struct SubsystemDoublet {
    int s;
    OperatorMatrix Xs_minus;
    OperatorMatrix Xs_plus;
    OperatorMatrix qs_minus;
    OperatorMatrix qs_plus;
    OperatorMatrix h_s;
    RelationReport report;
};

struct Factorization {
    std::vector<SubsystemDoublet> subsystems;
    RelationReport report;  // checks spanning all subsystems
};

inline Factorization factorize_subsystems(const SusyDoublet& D, const SectorHamiltonianTable& T,
                                          const WkGenerators& g, const ToleranceConfig& tol = {}) {
    using detail::times_diag;
    const GradedBasis& b = g.basis;
    const int k = b.k();
    const int d = b.d();
    for (int s = 2; s <= k; ++s)
        for (int n = 1; n <= d - 1; ++n)
            if (T(s, n) < -1e-12 * (1.0 + std::abs(T(s, n))))
                throw FactorizationDomainError(s, n, "sector Hamiltonian H_" + std::to_string(s) + "(" + std::to_string(n) +
                                                         ") = " + std::to_string(T(s, n)) + " is negative");

    const Window w1 = interior_window(b, 1);
    const Window w2 = interior_window(b, 2);
    auto Hop = [&](int s, int shift) {
        return diagonal_operator(b, [&, s, shift](int n, int) {
            const int m = n + shift;
            return cplx(m >= 0 && m <= d ? T(s, m) : 0.0, 0.0);
        });
    };

    Factorization out;
    for (int s = 2; s <= k; ++s) {
        const int gs = b.wrap(s);
        const int gsm = b.wrap(s - 1);
        CMatrix Xm = CMatrix::Zero(b.dim(), b.dim());
        for (int n = 1; n < d; ++n)
            Xm(b.flat_index(n - 1, gsm), b.flat_index(n, gs)) = std::sqrt(std::max(T(s, n), 0.0));
        OperatorMatrix XsM(b, Xm);
        OperatorMatrix XsP = XsM.dagger();
        const auto& Ps = g.projectors[static_cast<size_t>(gs)];
        const auto& Psm = g.projectors[static_cast<size_t>(gsm)];
        OperatorMatrix qm = times_diag(XsM, Ps);
        OperatorMatrix qp = times_diag(XsP, Psm);
        OperatorMatrix h = times_diag(XsM * XsP, Psm) + times_diag(XsP * XsM, Ps);

        RelationReport r;
        const double nq = qm.matrix().norm();
        r.add("q- q- = 0", vanishing_residual((qm * qm).matrix(), nq * nq, w2, tol));
        r.add("q+ q+ = 0", vanishing_residual((qp * qp).matrix(), nq * nq, w2, tol));
        r.add("q+ = q-^dagger", relation_residual(qm.dagger(), qp, w2, tol));
        r.add("h = {q-,q+}", relation_residual(h, q_commutator(qm, qp, -1.0), w2, tol));
        r.add("h q- = q- h", relation_residual(h * qm, qm * h, w2, tol));
        r.add("h q+ = q+ h", relation_residual(h * qp, qp * h, w2, tol));
        r.add("h hermitean", relation_residual(h.dagger(), h, w2, tol));
        r.add("X(s)- X(s)+ = H_s(N+1) on sector s-1",
              relation_residual(times_diag(XsM * XsP, Psm), times_diag(Hop(s, 1), Psm), w1, tol));

        const int ground = b.flat_index(0, gs);
        const Window w_ex = w1.without({ground});
        r.add("X(s)+ X(s)- = H_s Pi_s off the ground state",
              relation_residual(times_diag(XsP * XsM, Ps), times_diag(Hop(s, 0), Ps), w_ex, tol));
        const OperatorMatrix h33 = times_diag(Hop(s - 1, 0), Psm) + times_diag(Hop(s, 0), Ps);
        r.add("h = H_{s-1} Pi_{s-1} + H_s Pi_s off |0,s>", relation_residual(h, h33, w_ex, tol));
        {
            const double gap = (h33 - h)(ground, ground).real();
            const double want = T(s, 0);
            const double res = std::abs(gap - want) / std::max(std::abs(want), tol.abs_floor);
            r.add("discrepancy at |0,s> = H_s(0)", res, res <= tol.rel_tol);
        }
        r.add("H_{s-1} X(s)- = X(s)- H_s", relation_residual(Hop(s - 1, 0) * XsM, XsM * Hop(s, 0), w1, tol));
        r.add("H_s X(s)+ = X(s)+ H_{s-1}", relation_residual(Hop(s, 0) * XsP, XsP * Hop(s - 1, 0), w1, tol));

        out.subsystems.push_back({s, std::move(XsM), std::move(XsP), std::move(qm), std::move(qp), std::move(h), std::move(r)});
    }

    // H = q(2)- q(2)+ + sum_s q(s)+ q(s)-, away from the ground states |0,s>, s = 2..k.
    {
        OperatorMatrix sum = out.subsystems.front().qs_minus * out.subsystems.front().qs_plus;
        std::vector<int> grounds;
        for (const auto& sub : out.subsystems) {
            sum = sum + sub.qs_plus * sub.qs_minus;
            grounds.push_back(b.flat_index(0, b.wrap(sub.s)));
        }
        out.report.add("H = q(2)- q(2)+ + sum_s q(s)+ q(s)- off the ground states",
                       relation_residual(sum, D.H, w1.without(grounds), tol));
        double worst = 0.0;
        for (const auto& sub : out.subsystems) {
            const int i = b.flat_index(0, b.wrap(sub.s));
            const double gap = (D.H - sum)(i, i).real();
            worst = std::max(worst, std::abs(gap - T(sub.s, 0)) / std::max(std::abs(T(sub.s, 0)), tol.abs_floor));
        }
        out.report.add("sum identity discrepancy at |0,s> = H_s(0)", worst, worst <= tol.rel_tol);
    }

    // Partner relation H_s(n) = H_{s-1}(n-1).
    {
        double worst = 0.0;
        double scale = tol.abs_floor;
        for (int s = 2; s <= k; ++s)
            for (int n = 1; n <= d; ++n) {
                worst = std::max(worst, std::abs(T(s, n) - T(s - 1, n - 1)));
                scale = std::max(scale, std::abs(T(s, n)));
            }
        out.report.add("H_s(n) = H_{s-1}(n-1)", worst / scale, worst / scale <= tol.rel_tol);
    }

    // Replicas: each h(s) spectrum, ground level removed and shifted to start at 0.
    {
        const int levels = 2 * (d - 4);
        std::vector<std::vector<double>> spectra;
        for (const auto& sub : out.subsystems) {
            std::vector<double> e;
            const int ground = b.flat_index(0, b.wrap(sub.s));
            for (int i = 0; i < b.dim(); ++i) {
                const int gi = b.grade_of(i);
                if (i == ground || b.level_of(i) > d - 3) continue;
                if (gi != b.wrap(sub.s) && gi != b.wrap(sub.s - 1)) continue;
                e.push_back(sub.h_s(i, i).real());
            }
            std::sort(e.begin(), e.end());
            const double lo = e.front();
            for (double& x : e) x -= lo;
            e.resize(static_cast<size_t>(std::min<int>(levels, static_cast<int>(e.size()))));
            spectra.push_back(std::move(e));
        }
        double worst = 0.0;
        double scale = tol.abs_floor;
        for (size_t i = 1; i < spectra.size(); ++i)
            for (size_t j = 0; j < std::min(spectra[0].size(), spectra[i].size()); ++j) {
                worst = std::max(worst, std::abs(spectra[i][j] - spectra[0][j]));
                scale = std::max(scale, std::abs(spectra[0][j]));
            }
        out.report.add("h(s) spectra coincide up to ground level and shift", worst / scale, worst / scale <= tol.rel_tol);
    }
    return out;
}

}  // namespace wksusy
