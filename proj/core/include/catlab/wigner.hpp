#pragma once

// Wigner function of the motional state (spin traced out, or one spin sector),
// in the coherent-label coordinates x = Re(beta), p = Im(beta), normalised so that
// the integral over dx dp is 1. A coherent state |a> has peak value 2/pi at beta = a.

#include <optional>
#include <vector>

#include "catlab/phase_core.hpp"

namespace catlab {

struct GridAxis {
    double min;
    double max;
    int points;

    double at(int i) const noexcept { return points == 1 ? min : min + (max - min) * i / (points - 1); }
    double step() const noexcept { return points == 1 ? 0.0 : (max - min) / (points - 1); }
};

struct WignerGrid {
    GridAxis x;
    GridAxis p;
    std::vector<double> values;  // row-major in p: values[ip * x.points + ix]

    double at(int ix, int ip) const { return values[static_cast<std::size_t>(ip) * x.points + ix]; }
    double cell_area() const noexcept { return x.step() * p.step(); }
    /// Sum of values times cell area.
    double integral() const;
    double min_value() const;
};

/// Point value; sector restricts to one spin, otherwise the spin is traced out.
double wigner_at(const SpinMotionState& psi, Complex beta, std::optional<Spin> sector = std::nullopt);

WignerGrid wigner(const SpinMotionState& psi, const GridAxis& x, const GridAxis& p,
                  std::optional<Spin> sector = std::nullopt, unsigned threads = 1);

}  // namespace catlab
