#include "catlab/operators.hpp"

#include <cmath>

#include "catlab/error.hpp"

namespace catlab {

void KickParams::validate() const {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidArgument("eta must be finite and > 0");
    if (!std::isfinite(phi_lambda)) throw InvalidArgument("phi_lambda must be finite");
    if (direction != KickDirection::Forward && direction != KickDirection::Backward) {
        throw InvalidArgument("kick direction must be +1 or -1");
    }
}

void RotationParams::validate() const {
    if (!std::isfinite(phi_mu)) throw InvalidArgument("microwave phase must be finite");
    if (!(area >= 0.0) || !std::isfinite(area)) {
        throw InvalidArgument("unsupported microwave pulse area (must be finite and >= 0)");
    }
}

void TrapParams::validate() const {
    if (!(omega > 0.0) || !(f_rep > 0.0) || !(omega_hf > 0.0) || !std::isfinite(omega) ||
        !std::isfinite(f_rep) || !std::isfinite(omega_hf)) {
        throw InvalidArgument("trap parameters omega, f_rep, omega_hf must be finite and > 0");
    }
}

SpinMotionState apply_sdk(const SpinMotionState& psi, const KickParams& k, const Tolerances& tol) {
    k.validate();
    const double d = sign(k.direction);
    const Complex raise_phase = std::polar(1.0, k.phi_lambda);
    const Complex lower_phase = std::conj(raise_phase);

    std::vector<CoherentTerm> out;
    out.reserve(psi.size());
    for (const auto& t : psi.terms()) {
        const Complex a = t.label.value();
        // Down -> Up with D[+i d eta]; Up -> Down with D[-i d eta].
        const Complex gamma = (t.spin == Spin::Down ? 1.0 : -1.0) * Complex(0.0, d * k.eta);
        const Complex disp_phase = std::exp(0.5 * (gamma * std::conj(a) - std::conj(gamma) * a));
        const Complex opt = t.spin == Spin::Down ? raise_phase : lower_phase;
        out.push_back({t.amp * opt * disp_phase, flipped(t.spin), CoherentLabel(a + gamma)});
    }
    return canonicalize(out, tol);
}

SpinMotionState apply_evolution(const SpinMotionState& psi, double theta, const Tolerances& tol) {
    if (!std::isfinite(theta)) throw InvalidArgument("evolution angle must be finite");
    const Complex rot = std::polar(1.0, -theta);
    std::vector<CoherentTerm> out(psi.terms().begin(), psi.terms().end());
    for (auto& t : out) t.label = CoherentLabel(t.label.value() * rot);
    return canonicalize(out, tol);
}

SpinMatrix uwave_matrix(const RotationParams& r) {
    r.validate();
    const double c = std::cos(0.5 * r.area);
    const double s = std::sin(0.5 * r.area);
    const Complex e = std::polar(1.0, r.phi_mu);
    return {c, e * s, -std::conj(e) * s, c};
}

SpinMotionState apply_uwave(const SpinMotionState& psi, const RotationParams& r, const Tolerances& tol) {
    const SpinMatrix m = uwave_matrix(r);
    std::vector<CoherentTerm> out;
    out.reserve(2 * psi.size());
    for (const auto& t : psi.terms()) {
        // Column of the input spin.
        const Complex to_up = t.spin == Spin::Up ? m.uu : m.ud;
        const Complex to_down = t.spin == Spin::Up ? m.du : m.dd;
        out.push_back({t.amp * to_up, Spin::Up, t.label});
        out.push_back({t.amp * to_down, Spin::Down, t.label});
    }
    return canonicalize(out, tol);
}

std::vector<DiffractionOrder> kapitza_dirac_populations(double theta_pulse, int n_range) {
    if (!(theta_pulse >= 0.0) || !std::isfinite(theta_pulse)) {
        throw InvalidArgument("pulse area must be finite and >= 0");
    }
    if (n_range < 0) throw InvalidArgument("n_range must be >= 0");
    std::vector<DiffractionOrder> out;
    out.reserve(2 * static_cast<std::size_t>(n_range) + 1);
    for (int n = -n_range; n <= n_range; ++n) {
        // J_{-n} = (-1)^n J_n, so the population only depends on |n|.
        const double j = std::cyl_bessel_j(static_cast<double>(std::abs(n)), theta_pulse);
        out.push_back({n, j * j});
    }
    return out;
}

}  // namespace catlab
