#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace wksusy {

using cplx = std::complex<double>;

/// exp(2*pi*i*m/k), with m reduced mod k first so large powers stay exact.
inline cplx root_power(int k, long long m) {
    long long r = m % k;
    if (r < 0) r += k;
    if (r == 0) return {1.0, 0.0};
    if (2 * r == k) return {-1.0, 0.0};
    if (4 * r == k) return {0.0, 1.0};
    if (4 * r == 3 * k) return {0.0, -1.0};
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(r) / k;
    return {std::cos(phi), std::sin(phi)};
}

/// Integer power of an arbitrary complex number by repeated squaring.
inline cplx cpow_int(cplx z, long long m) {
    if (m < 0) return 1.0 / cpow_int(z, -m);
    cplx acc{1.0, 0.0};
    while (m > 0) {
        if (m & 1) acc *= z;
        z *= z;
        m >>= 1;
    }
    return acc;
}

/// [[n]]_Q = 1 + Q + ... + Q^{n-1}; [[0]]_Q = 0.
inline cplx qint(int n, cplx Q) {
    cplx sum{0.0, 0.0};
    cplx pw{1.0, 0.0};
    for (int j = 0; j < n; ++j) {
        sum += pw;
        pw *= Q;
    }
    return sum;
}

/// [[n]]_q at q = exp(2*pi*i/k), summed from exactly reduced powers.
inline cplx qint_root(int n, int k) {
    cplx sum{0.0, 0.0};
    for (int j = 0; j < n; ++j) sum += root_power(k, j);
    return sum;
}

inline cplx qfactorial(int n, cplx Q) {
    cplx acc{1.0, 0.0};
    for (int j = 1; j <= n; ++j) acc *= qint(j, Q);
    return acc;
}

inline cplx qfactorial_root(int n, int k) {
    cplx acc{1.0, 0.0};
    for (int j = 1; j <= n; ++j) acc *= qint_root(j, k);
    return acc;
}

/// Symmetric q-number [n]_q = (q^n - q^-n)/(q - q^-1) at q = exp(2*pi*i/k).
/// Evaluated as the finite sum of q^{n-1-2j}, which also covers k = 2
/// where the quotient is 0/0.
inline double sym_qnumber(long long n, int k) {
    if (n < 0) return -sym_qnumber(-n, k);
    double sum = 0.0;
    for (long long j = 0; j < n; ++j) sum += root_power(k, n - 1 - 2 * j).real();
    return std::abs(sum) < 1e-12 ? 0.0 : sum;
}

/// sin(4*pi*t/k) / sin(2*pi/k), i.e. [2t]_q; equals -2t at k = 2.
inline double sine_ratio(long long t, int k) {
    if (k == 2) return sym_qnumber(2 * t, k);
    const double pi = std::numbers::pi;
    const double r = std::sin(4.0 * pi * static_cast<double>(t % k) / k) / std::sin(2.0 * pi / k);
    return std::abs(r) < 1e-12 ? 0.0 : r;
}

}  // namespace wksusy
