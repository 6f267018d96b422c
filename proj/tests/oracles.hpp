#pragma once

// Reference values computed without the library: explicit polar forms,
// hand-rolled loops over std::vector, textbook closed forms.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline cplx q_of(int k) { return std::polar(1.0, 2.0 * std::numbers::pi / k); }

/// (1 - Q^n) / (1 - Q), or n when Q = 1.
inline cplx bracket(int n, cplx Q) {
    if (std::abs(Q - 1.0) < 1e-15) return static_cast<double>(n);
    return (1.0 - std::pow(Q, n)) / (1.0 - Q);
}

inline cplx bracket_factorial(int n, cplx Q) {
    cplx acc = 1.0;
    for (int j = 1; j <= n; ++j) acc *= bracket(j, Q);
    return acc;
}

/// sin(2 pi n / k) / sin(2 pi / k).
inline double symmetric_number(int n, int k) {
    return std::sin(2.0 * std::numbers::pi * n / k) / std::sin(2.0 * std::numbers::pi / k);
}

/// Oscillator sector energy, grade 0 read as sector k.
inline double oscillator_energy(int k, int sector, int n) {
    const int s = sector == 0 ? k : sector;
    return (k - 1) * (n + k / 2.0 + 1.0 - s);
}

/// F_s(n) by literally iterating F_{s+1}(n+1) = F_s(n) + f_s(n) from F_s(0) = 0.
template <class F>
std::vector<std::vector<double>> structure_table(int k, int d, F&& f) {
    std::vector<std::vector<double>> T(static_cast<size_t>(k), std::vector<double>(static_cast<size_t>(d + 1), 0.0));
    for (int n = 0; n < d; ++n)
        for (int s = 0; s < k; ++s) T[static_cast<size_t>((s + 1) % k)][static_cast<size_t>(n + 1)] = T[static_cast<size_t>(s)][static_cast<size_t>(n)] + f(s, n);
    return T;
}

/// Coefficient-vector q-derivative: theta^s -> bracket(s, Q) theta^{s-1}.
inline std::vector<cplx> derive(const std::vector<cplx>& c, cplx Q) {
    std::vector<cplx> out(c.size(), 0.0);
    for (size_t s = 1; s < c.size(); ++s) out[s - 1] = bracket(static_cast<int>(s), Q) * c[s];
    return out;
}

inline std::vector<cplx> times_theta(const std::vector<cplx>& c) {
    std::vector<cplx> out(c.size(), 0.0);
    for (size_t s = 0; s + 1 < c.size(); ++s) out[s + 1] = c[s];
    return out;
}

/// Harmonic ladder n + 1/2 + shift for the lowest `count` levels.
inline std::vector<double> harmonic_levels(int count, double shift) {
    std::vector<double> v;
    for (int n = 0; n < count; ++n) v.push_back(n + 0.5 + shift);
    return v;
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace oracle
