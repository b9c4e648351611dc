#include "catlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catlab/error.hpp"

namespace catlab {

// Newton iteration on the orthonormal Hermite recurrence, seeded with the
// usual asymptotic guesses for the largest roots.
QuadratureRule gauss_hermite(int n) {
    if (n < 1) throw InvalidArgument("Gauss-Hermite rule needs at least one node");
    constexpr double kEps = 1e-15;
    constexpr int kMaxIter = 200;
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);

    std::vector<double> x(n), w(n);
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1) - 1.85575 * std::pow(2.0 * n + 1, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * x[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * x[1];
        } else {
            z = 2.0 * z - x[i - 2];
        }
        double pp = 0.0;
        for (int it = 0; it < kMaxIter; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= kEps * std::max(1.0, std::abs(z))) break;
        }
        if (n % 2 == 1 && i == m - 1) z = 0.0;
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    std::reverse(x.begin(), x.end());
    std::reverse(w.begin(), w.end());
    // Roots were generated from the largest down; after reversal nodes ascend.
    return {std::move(x), std::move(w)};
}

}  // namespace catlab
