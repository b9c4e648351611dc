#include "catlab/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "catlab/error.hpp"
#include "catlab/parallel.hpp"

namespace catlab {

namespace {

void check_axis(const GridAxis& a) {
    if (a.points < 1 || !std::isfinite(a.min) || !std::isfinite(a.max) || a.max < a.min) {
        throw InvalidArgument("Wigner grid axis must be finite with max >= min and >= 1 point");
    }
}

double sector_norm(const SpinMotionState& psi, std::optional<Spin> sector) {
    return (sector ? inner(psi, psi, *sector) : inner(psi, psi)).real();
}

}  // namespace

double WignerGrid::integral() const {
    return std::accumulate(values.begin(), values.end(), 0.0) * cell_area();
}

double WignerGrid::min_value() const { return *std::min_element(values.begin(), values.end()); }

// W of |a><b| is (2/pi) <b|a> exp(-2 (beta - a)(conj(beta) - conj(b))).
double wigner_at(const SpinMotionState& psi, Complex beta, std::optional<Spin> sector) {
    const double n = sector_norm(psi, sector);
    if (!(n > 1e-300)) throw ZeroNorm("Wigner function of a zero-norm state");
    Complex sum = 0.0;
    for (const auto& tj : psi.terms()) {
        if (sector && tj.spin != *sector) continue;
        for (const auto& tk : psi.terms()) {
            if (tk.spin != tj.spin) continue;
            const Complex a = tj.label.value();
            const Complex b = tk.label.value();
            sum += tj.amp * std::conj(tk.amp) * overlap(tk.label, tj.label) *
                   std::exp(-2.0 * (beta - a) * (std::conj(beta) - std::conj(b)));
        }
    }
    return 2.0 / std::numbers::pi * sum.real() / n;
}

WignerGrid wigner(const SpinMotionState& psi, const GridAxis& x, const GridAxis& p, std::optional<Spin> sector,
                  unsigned threads) {
    check_axis(x);
    check_axis(p);
    WignerGrid grid{x, p, std::vector<double>(static_cast<std::size_t>(x.points) * p.points)};
    parallel_for(static_cast<std::size_t>(p.points), threads, [&](std::size_t ip) {
        const double pv = p.at(static_cast<int>(ip));
        for (int ix = 0; ix < x.points; ++ix) {
            grid.values[ip * x.points + ix] = wigner_at(psi, Complex(x.at(ix), pv), sector);
        }
    });
    return grid;
}

}  // namespace catlab
