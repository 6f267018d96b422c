#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "wksusy/errors.hpp"

namespace wksusy {

/// Grid on [lower, upper] with `points` nodes, Dirichlet at both ends.
struct FdGrid {
    double lower = -8.0;
    double upper = 8.0;
    int points = 2001;

    static FdGrid symmetric(double L, int points) { return {-L, L, points}; }
    double spacing() const { return (upper - lower) / (points - 1); }

    void validate() const {
        if (!(std::isfinite(lower) && std::isfinite(upper)) || std::abs(lower + upper) > 1e-12 * std::abs(upper))
            throw ConfigurationError("finite-difference domain must be symmetric [-L, L]");
        if (upper < 6.0) throw ConfigurationError("finite-difference half-width L must be >= 6");
        if (points < 1001) throw ConfigurationError("finite-difference grid needs at least 1001 points");
    }
};

/// Lowest eigenvalues of -1/2 d^2/dx^2 + 1/2 x^2 + shift on the interior nodes.
inline std::vector<double> fd_component_levels(const FdGrid& g, double shift, int count) {
    const int n = g.points - 2;
    const double h = g.spacing();
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub = Eigen::VectorXd::Constant(n - 1, -0.5 / (h * h));
    for (int i = 0; i < n; ++i) {
        const double x = g.lower + (i + 1) * h;
        diag(i) = 1.0 / (h * h) + 0.5 * x * x + shift;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("tridiagonal eigensolve did not converge");
    std::vector<double> out;
    for (int i = 0; i < std::min(count, n); ++i) out.push_back(es.eigenvalues()(i));
    return out;
}

/// Lowest five levels of -1/2 d^2/dx^2 + 1/2 x^2 - K/2 with K = +-1 blocks.
inline std::vector<double> fd_spectrum_super_oscillator(const FdGrid& g, int count = 5) {
    g.validate();
    auto even = fd_component_levels(g, -0.5, count);
    auto odd = fd_component_levels(g, +0.5, count);
    even.insert(even.end(), odd.begin(), odd.end());
    std::sort(even.begin(), even.end());
    even.resize(static_cast<size_t>(count));
    return even;
}

struct FdConvergence {
    std::vector<double> coarse, fine;
    double coarse_error = 0.0;
    double fine_error = 0.0;
    double ratio = 0.0;
};

/// Max error against the exact levels at N and 2N-1 points (spacing halved).
inline FdConvergence fd_convergence_study(const FdGrid& g, const std::vector<double>& exact) {
    FdConvergence c;
    const int count = static_cast<int>(exact.size());
    c.coarse = fd_spectrum_super_oscillator(g, count);
    c.fine = fd_spectrum_super_oscillator({g.lower, g.upper, 2 * g.points - 1}, count);
    for (int i = 0; i < count; ++i) {
        c.coarse_error = std::max(c.coarse_error, std::abs(c.coarse[static_cast<size_t>(i)] - exact[static_cast<size_t>(i)]));
        c.fine_error = std::max(c.fine_error, std::abs(c.fine[static_cast<size_t>(i)] - exact[static_cast<size_t>(i)]));
    }
    c.ratio = c.coarse_error / c.fine_error;
    return c;
}

}  // namespace wksusy
