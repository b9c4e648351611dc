#pragma once

// Number-basis reference values computed directly from series, independent of
// both engines under test.

#include <cmath>
#include <complex>
#include <vector>

namespace catlab::testing {

using C = std::complex<double>;

/// <n|a> for n <= n_max.
inline std::vector<C> coherent_coefficients(C a, int n_max) {
    std::vector<C> c(static_cast<std::size_t>(n_max) + 1);
    c[0] = std::exp(-0.5 * std::norm(a));
    for (int n = 1; n <= n_max; ++n) c[n] = c[n - 1] * a / std::sqrt(static_cast<double>(n));
    return c;
}

/// <a|b> by a truncated sum over number states.
inline C overlap_series(C a, C b, int n_max) {
    const auto ca = coherent_coefficients(a, n_max);
    const auto cb = coherent_coefficients(b, n_max);
    C s = 0.0;
    for (int n = 0; n <= n_max; ++n) s += std::conj(ca[n]) * cb[n];
    return s;
}

/// J_n(x) from its power series.
inline double bessel_series(int n, double x) {
    double term = 1.0;
    for (int k = 1; k <= n; ++k) term *= 0.5 * x / k;
    double sum = term;
    for (int m = 1; m < 200; ++m) {
        term *= -0.25 * x * x / (m * static_cast<double>(m + n));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace catlab::testing
