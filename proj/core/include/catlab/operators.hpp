#pragma once

// Unitaries of the experiment, acting on spin-labelled coherent superpositions.
//
// Conventions (basis order Up, Down; interaction picture for the motion):
//   SDK, direction d, optical phase phi:
//       |Down>|a>  ->  e^{+i phi} |Up>  D[+i d eta]|a>
//       |Up>|a>    ->  e^{-i phi} |Down> D[-i d eta]|a>
//     with D[g]|a> = e^{(g conj(a) - conj(g) a)/2} |a + g>.
//   Free evolution:   |a> -> |a e^{-i theta}>, no dynamical phase.
//   Microwave pulse of area A and phase phi:
//       [[cos(A/2),                 e^{i phi} sin(A/2)],
//        [-e^{-i phi} sin(A/2),     cos(A/2)          ]]
//     which is (1/sqrt 2)[[1, e^{i phi}], [-e^{-i phi}, 1]] at A = pi/2.

#include <numbers>
#include <vector>

#include "catlab/phase_core.hpp"

namespace catlab {

enum class KickDirection : int { Forward = 1, Backward = -1 };

constexpr int sign(KickDirection d) noexcept { return static_cast<int>(d); }
constexpr KickDirection reversed(KickDirection d) noexcept {
    return d == KickDirection::Forward ? KickDirection::Backward : KickDirection::Forward;
}

struct KickParams {
    double eta = 0.2;                               // Lamb-Dicke parameter
    double phi_lambda = 0.0;                        // optical phase [rad]
    KickDirection direction = KickDirection::Forward;

    void validate() const;
};

struct RotationParams {
    double phi_mu = 0.0;                            // microwave phase [rad]
    double area = std::numbers::pi / 2;             // pulse area [rad]

    void validate() const;
};

struct TrapParams {
    double omega = 2 * std::numbers::pi * 1.0e6;         // secular frequency [rad/s]
    double f_rep = 81.4e6;                               // laser repetition rate [Hz]
    double omega_hf = 2 * std::numbers::pi * 12.642815e9; // qubit splitting [rad/s], bookkeeping

    void validate() const;

    /// Trap phase accumulated between successive laser pulses [rad].
    double phase_per_pulse() const noexcept { return omega / f_rep; }
    /// Number of laser pulses per trap period, 2 pi f_rep / omega.
    double pulses_per_period() const noexcept { return 2 * std::numbers::pi * f_rep / omega; }
};

SpinMotionState apply_sdk(const SpinMotionState& psi, const KickParams& k, const Tolerances& tol = {});

SpinMotionState apply_evolution(const SpinMotionState& psi, double theta, const Tolerances& tol = {});

SpinMotionState apply_uwave(const SpinMotionState& psi, const RotationParams& r, const Tolerances& tol = {});

/// 2x2 microwave rotation matrix in (Up, Down) order, row-major.
struct SpinMatrix {
    Complex uu, ud, du, dd;
};
SpinMatrix uwave_matrix(const RotationParams& r);

struct DiffractionOrder {
    int n;
    double population;
};

/// Kapitza-Dirac populations J_n(theta_pulse)^2 for |n| <= n_range.
std::vector<DiffractionOrder> kapitza_dirac_populations(double theta_pulse, int n_range);

}  // namespace catlab
