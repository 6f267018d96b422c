#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#include "wksusy/errors.hpp"
#include "wksusy/qnumbers.hpp"

namespace wksusy {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Z_k-graded truncated Fock space. States |n,s> with n = 0..d-1 and
/// s = 0..k-1 are laid out s-major: flat index s*d + n.
class GradedBasis {
public:
    GradedBasis(int k, int d) : k_(k), d_(d) {
        if (k < 2) throw DimensionError("grading order k must be >= 2, got " + std::to_string(k));
        if (d < 4) throw DimensionError("truncation depth d must be >= 4, got " + std::to_string(d));
    }

    int k() const noexcept { return k_; }
    int d() const noexcept { return d_; }
    int dim() const noexcept { return k_ * d_; }

    int flat_index(int n, int s) const {
        if (n < 0 || n >= d_ || s < 0 || s >= k_)
            throw IndexError("state (n=" + std::to_string(n) + ", s=" + std::to_string(s) +
                             ") outside basis k=" + std::to_string(k_) + ", d=" + std::to_string(d_));
        return s * d_ + n;
    }
    int level_of(int idx) const { check_flat(idx); return idx % d_; }
    int grade_of(int idx) const { check_flat(idx); return idx / d_; }

    /// Grade arithmetic is always mod k.
    int wrap(int s) const noexcept { return ((s % k_) + k_) % k_; }

    friend bool operator==(const GradedBasis& a, const GradedBasis& b) {
        return a.k_ == b.k_ && a.d_ == b.d_;
    }

private:
    void check_flat(int idx) const {
        if (idx < 0 || idx >= dim()) throw IndexError("flat index " + std::to_string(idx) + " out of range");
    }
    int k_;
    int d_;
};

inline int flat_index(int n, int s, const GradedBasis& b) { return b.flat_index(n, s); }

struct ToleranceConfig {
    double rel_tol = 1e-10;
    double abs_floor = 1e-12;

    void validate() const {
        if (!(rel_tol > 0.0)) throw ConfigurationError("rel_tol must be positive");
        if (!(abs_floor > 0.0)) throw ConfigurationError("abs_floor must be positive");
    }
};

struct RootOfUnity {
    int k;
    cplx q;
    cplx qbar;

    explicit RootOfUnity(int order) : k(order), q(root_power(order, 1)), qbar(root_power(order, -1)) {
        if (order < 1) throw DimensionError("root of unity order must be positive");
    }
    cplx pow(long long m) const { return root_power(k, m); }
    /// q^{m/2} = exp(i*pi*m/k).
    cplx half_pow(long long m) const { return root_power(2 * k, m); }
};

inline bool all_finite(const CMatrix& m) {
    return m.allFinite();
}

/// A*B, routed through a sparse product when both factors are mostly zero.
/// Ladder, grading and projector matrices have O(dim) non-zeros, so this
/// turns the cubic dense product into a near-linear one.
inline CMatrix product(const CMatrix& A, const CMatrix& B) {
    const Eigen::Index n = A.rows() * A.cols();
    if (n < 4096) return A * B;
    const auto nzA = (A.array() != cplx(0.0)).count();
    const auto nzB = (B.array() != cplx(0.0)).count();
    if (10 * nzA > n || 10 * nzB > n) return A * B;
    const Eigen::SparseMatrix<cplx> a = A.sparseView();
    const Eigen::SparseMatrix<cplx> b = B.sparseView();
    return CMatrix(a * b);
}

/// Dense complex operator tied to a GradedBasis.
class OperatorMatrix {
public:
    OperatorMatrix(const GradedBasis& basis, CMatrix entries) : basis_(basis), m_(std::move(entries)) {
        if (m_.rows() != basis_.dim() || m_.cols() != basis_.dim())
            throw DimensionError("operator shape does not match basis dimension " + std::to_string(basis_.dim()));
        if (!all_finite(m_)) throw DimensionError("operator entries must be finite");
    }

    static OperatorMatrix zero(const GradedBasis& b) { return {b, CMatrix::Zero(b.dim(), b.dim())}; }
    static OperatorMatrix identity(const GradedBasis& b) { return {b, CMatrix::Identity(b.dim(), b.dim())}; }

    const GradedBasis& basis() const noexcept { return basis_; }
    const CMatrix& matrix() const noexcept { return m_; }
    cplx operator()(int r, int c) const { return m_(r, c); }

    OperatorMatrix dagger() const { return {basis_, m_.adjoint()}; }

    OperatorMatrix operator+(const OperatorMatrix& o) const { same(o); return {basis_, m_ + o.m_}; }
    OperatorMatrix operator-(const OperatorMatrix& o) const { same(o); return {basis_, m_ - o.m_}; }
    OperatorMatrix operator*(const OperatorMatrix& o) const { same(o); return {basis_, product(m_, o.m_)}; }
    OperatorMatrix operator*(cplx z) const { return {basis_, m_ * z}; }
    friend OperatorMatrix operator*(cplx z, const OperatorMatrix& a) { return a * z; }

    OperatorMatrix pow(int m) const {
        if (m < 0) throw UsageError("negative operator power");
        CMatrix acc = CMatrix::Identity(m_.rows(), m_.cols());
        for (int i = 0; i < m; ++i) acc = product(acc, m_);
        return {basis_, std::move(acc)};
    }

    void require_same_basis(const OperatorMatrix& o) const { same(o); }

private:
    void same(const OperatorMatrix& o) const {
        if (!(basis_ == o.basis_)) throw DimensionError("operators live on different bases");
    }
    GradedBasis basis_;
    CMatrix m_;
};

/// [A,B]_Q = AB - Q BA.
inline CMatrix q_commutator(const CMatrix& A, const CMatrix& B, cplx Q) {
    if (A.rows() != B.rows() || A.cols() != B.cols() || A.rows() != A.cols())
        throw DimensionError("q_commutator needs square operators of equal size");
    return product(A, B) - Q * product(B, A);
}

inline OperatorMatrix q_commutator(const OperatorMatrix& A, const OperatorMatrix& B, cplx Q) {
    A.require_same_basis(B);
    return {A.basis(), q_commutator(A.matrix(), B.matrix(), Q)};
}

/// Diagonal 0/1 mask standing for an orthogonal projector onto basis states.
class Window {
public:
    explicit Window(Eigen::VectorXd mask) : mask_(std::move(mask)) {}
    static Window full(Eigen::Index dim) { return Window(Eigen::VectorXd::Ones(dim)); }

    const Eigen::VectorXd& mask() const noexcept { return mask_; }
    Eigen::Index dim() const noexcept { return mask_.size(); }
    int rank() const { return static_cast<int>(mask_.sum() + 0.5); }
    CMatrix matrix() const { return mask_.cast<cplx>().asDiagonal(); }

    CMatrix sandwich(const CMatrix& A) const {
        if (A.rows() != dim() || A.cols() != dim()) throw DimensionError("window size mismatch");
        return mask_.asDiagonal() * A * mask_.asDiagonal();
    }
    Window intersect(const Window& o) const {
        if (o.dim() != dim()) throw DimensionError("window size mismatch");
        return Window(mask_.cwiseProduct(o.mask_));
    }
    /// Remove single basis states from the window.
    Window without(const std::vector<int>& idx) const {
        Eigen::VectorXd m = mask_;
        for (int i : idx) {
            if (i < 0 || i >= dim()) throw IndexError("window index out of range");
            m(i) = 0.0;
        }
        return Window(m);
    }

private:
    Eigen::VectorXd mask_;
};

/// Projector onto levels n <= d-1-r, away from the truncation edge.
inline Window interior_window(const GradedBasis& b, int r) {
    if (r < 0 || r >= b.d())
        throw WindowError("raising degree " + std::to_string(r) + " outside 0.." + std::to_string(b.d() - 1));
    Eigen::VectorXd m = Eigen::VectorXd::Zero(b.dim());
    for (int s = 0; s < b.k(); ++s)
        for (int n = 0; n <= b.d() - 1 - r; ++n) m(b.flat_index(n, s)) = 1.0;
    return Window(m);
}

struct Residual {
    double residual = 0.0;
    bool pass = true;
};

/// ||W(lhs-rhs)W|| / max(||W lhs W||, ||W rhs W||, abs_floor), Frobenius norms.
inline Residual relation_residual(const CMatrix& lhs, const CMatrix& rhs, const Window& w,
                                  const ToleranceConfig& tol = {}) {
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
        throw DimensionError("relation sides differ in shape");
    const double num = w.sandwich(lhs - rhs).norm();
    const double den = std::max({w.sandwich(lhs).norm(), w.sandwich(rhs).norm(), tol.abs_floor});
    const double r = num / den;
    return {r, r <= tol.rel_tol};
}

inline Residual relation_residual(const OperatorMatrix& lhs, const OperatorMatrix& rhs, const Window& w,
                                  const ToleranceConfig& tol = {}) {
    lhs.require_same_basis(rhs);
    return relation_residual(lhs.matrix(), rhs.matrix(), w, tol);
}

/// Residual of an identity "expr = 0". The scale is supplied by the caller,
/// normally the product of the operand norms, since the relative formula
/// above has nothing but the floor to divide by when one side is zero.
inline Residual vanishing_residual(const CMatrix& expr, double scale, const Window& w,
                                   const ToleranceConfig& tol = {}) {
    const double r = w.sandwich(expr).norm() / std::max(scale, tol.abs_floor);
    return {r, r <= tol.rel_tol};
}

/// Relative residual whose denominator also includes a caller-supplied operand scale.
inline Residual scaled_residual(const CMatrix& lhs, const CMatrix& rhs, double scale, const Window& w,
                                const ToleranceConfig& tol = {}) {
    const double num = w.sandwich(lhs - rhs).norm();
    const double den = std::max({w.sandwich(lhs).norm(), w.sandwich(rhs).norm(), scale, tol.abs_floor});
    return {num / den, num / den <= tol.rel_tol};
}

/// "[A,B]_Q = rhs" measured against ||A|| ||B|| as well, so a right-hand
/// side that vanishes identically is not compared to the bare floor.
inline Residual commutator_residual(const CMatrix& A, const CMatrix& B, cplx Q, const CMatrix& rhs, const Window& w,
                                    const ToleranceConfig& tol = {}) {
    return scaled_residual(q_commutator(A, B, Q), rhs, A.norm() * B.norm(), w, tol);
}

/// Entrywise agreement measured as max |a_ij - b_ij|.
inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("shape mismatch");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

struct SpectralEntry {
    double energy;
    int n;
    int s;
};

/// Sorted diagonal of an operator that is diagonal in the |n,s> basis.
inline std::vector<SpectralEntry> diagonal_spectrum(const OperatorMatrix& H, const ToleranceConfig& tol = {}) {
    const CMatrix& m = H.matrix();
    CMatrix off = m;
    off.diagonal().setZero();
    if (off.norm() > tol.abs_floor * std::max(m.norm(), 1.0))
        throw ShapeError("operator is not diagonal in the graded basis");
    const GradedBasis& b = H.basis();
    std::vector<SpectralEntry> out;
    out.reserve(b.dim());
    for (int i = 0; i < b.dim(); ++i) out.push_back({m(i, i).real(), b.level_of(i), b.grade_of(i)});
    std::stable_sort(out.begin(), out.end(), [](const SpectralEntry& a, const SpectralEntry& c) {
        return a.energy < c.energy;
    });
    return out;
}

}  // namespace wksusy
