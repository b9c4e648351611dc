#include "catlab/phase_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "catlab/error.hpp"

namespace catlab {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool canonical_less(const CoherentTerm& a, const CoherentTerm& b) {
    if (a.spin != b.spin) return a.spin < b.spin;
    if (a.label.re() != b.label.re()) return a.label.re() < b.label.re();
    return a.label.im() < b.label.im();
}

void check_term(const CoherentTerm& t, const Tolerances& tol) {
    if (!finite(t.amp) || !finite(t.label.value())) {
        throw InvalidArgument("non-finite amplitude or coherent label");
    }
    if (t.label.magnitude() > tol.alpha_max) {
        throw GuardViolation("coherent label |alpha| = " + std::to_string(t.label.magnitude()) +
                             " exceeds alpha_max = " + std::to_string(tol.alpha_max));
    }
}

}  // namespace

const char* to_string(Spin s) noexcept { return s == Spin::Up ? "up" : "down"; }

SpinMotionState::SpinMotionState(std::vector<CoherentTerm> terms, const Tolerances& tol)
    : SpinMotionState(canonicalize(terms, tol)) {}

SpinMotionState SpinMotionState::coherent(Spin spin, CoherentLabel label, Complex amp) {
    return SpinMotionState({CoherentTerm{amp, spin, label}});
}

ThermalEnsemble::ThermalEnsemble(double mean_phonons) : nbar(mean_phonons) {
    if (!(mean_phonons >= 0.0) || !std::isfinite(mean_phonons)) {
        throw InvalidArgument("thermal occupation nbar must be finite and >= 0");
    }
}

Complex overlap(CoherentLabel a, CoherentLabel b) noexcept {
    const Complex x = a.value();
    const Complex y = b.value();
    return std::exp(-0.5 * std::norm(x) - 0.5 * std::norm(y) + std::conj(x) * y);
}

Complex inner(const SpinMotionState& psi, const SpinMotionState& phi) noexcept {
    Complex sum = 0.0;
    for (const auto& a : psi.terms()) {
        for (const auto& b : phi.terms()) {
            if (a.spin != b.spin) continue;
            sum += std::conj(a.amp) * b.amp * overlap(a.label, b.label);
        }
    }
    return sum;
}

Complex inner(const SpinMotionState& psi, const SpinMotionState& phi, Spin sector) noexcept {
    Complex sum = 0.0;
    for (const auto& a : psi.terms()) {
        if (a.spin != sector) continue;
        for (const auto& b : phi.terms()) {
            if (b.spin != sector) continue;
            sum += std::conj(a.amp) * b.amp * overlap(a.label, b.label);
        }
    }
    return sum;
}

double norm(const SpinMotionState& psi) noexcept {
    return std::sqrt(std::max(0.0, inner(psi, psi).real()));
}

SpinMotionState canonicalize(std::span<const CoherentTerm> terms, const Tolerances& tol) {
    std::vector<CoherentTerm> sorted(terms.begin(), terms.end());
    for (const auto& t : sorted) check_term(t, tol);
    std::sort(sorted.begin(), sorted.end(), canonical_less);

    // Sorted by Re within a spin block, so candidates for merging with term i are
    // the following terms whose Re differs by at most merge_tol.
    std::vector<bool> absorbed(sorted.size(), false);
    std::vector<CoherentTerm> merged;
    merged.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (absorbed[i]) continue;
        CoherentTerm rep = sorted[i];
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            if (sorted[j].spin != rep.spin) break;
            if (sorted[j].label.re() - rep.label.re() > tol.merge_tol) break;
            if (absorbed[j]) continue;
            if (std::abs(sorted[j].label.value() - rep.label.value()) <= tol.merge_tol) {
                rep.amp += sorted[j].amp;
                absorbed[j] = true;
            }
        }
        if (std::abs(rep.amp) > tol.amp_tol) merged.push_back(rep);
    }
    return SpinMotionState(SpinMotionState::Trusted{}, std::move(merged));
}

std::vector<CoherentLabel> motional_labels(const SpinMotionState& psi, double tol) {
    std::vector<CoherentLabel> labels;
    for (const auto& t : psi.terms()) {
        const bool seen = std::any_of(labels.begin(), labels.end(), [&](const CoherentLabel& l) {
            return std::abs(l.value() - t.label.value()) <= tol;
        });
        if (!seen) labels.push_back(t.label);
    }
    std::sort(labels.begin(), labels.end(), [](const CoherentLabel& a, const CoherentLabel& b) {
        return a.re() != b.re() ? a.re() < b.re() : a.im() < b.im();
    });
    return labels;
}

std::size_t distinct_labels(const SpinMotionState& psi, double tol) {
    return motional_labels(psi, tol).size();
}

SpinMotionState scaled(const SpinMotionState& psi, Complex factor) {
    std::vector<CoherentTerm> out(psi.terms().begin(), psi.terms().end());
    for (auto& t : out) t.amp *= factor;
    return SpinMotionState(std::move(out));
}

}  // namespace catlab
