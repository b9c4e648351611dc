#pragma once

// Spin-labelled coherent-state algebra.
//
// A state is a finite superposition  sum_k c_k |s_k>|alpha_k>  with s_k in {Up, Down}
// and |alpha_k> a Glauber coherent state. Normalisation is never enforced by the
// operations; measurements divide by <psi|psi>.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace catlab {

using Complex = std::complex<double>;

enum class Spin : std::uint8_t { Up, Down };

constexpr Spin flipped(Spin s) noexcept { return s == Spin::Up ? Spin::Down : Spin::Up; }
const char* to_string(Spin s) noexcept;

/// Numerical knobs shared by every state-producing operation.
struct Tolerances {
    double merge_tol = 1e-12;   // labels closer than this (same spin) are merged
    double amp_tol = 1e-14;     // terms with |amp| <= amp_tol are dropped
    double alpha_max = 1e4;     // harmonic-region guard on |alpha|
};

/// Phase-space coordinate alpha of |alpha>: Re = <x>/2x0, Im = <p>x0/hbar.
class CoherentLabel {
public:
    constexpr CoherentLabel() = default;
    constexpr CoherentLabel(Complex alpha) : alpha_(alpha) {}
    constexpr CoherentLabel(double re, double im) : alpha_(re, im) {}

    constexpr Complex value() const noexcept { return alpha_; }
    double re() const noexcept { return alpha_.real(); }
    double im() const noexcept { return alpha_.imag(); }
    double magnitude() const noexcept { return std::abs(alpha_); }

    friend bool operator==(const CoherentLabel&, const CoherentLabel&) = default;

private:
    Complex alpha_{};
};

struct CoherentTerm {
    Complex amp;
    Spin spin;
    CoherentLabel label;

    friend bool operator==(const CoherentTerm&, const CoherentTerm&) = default;
};

/// Immutable canonical superposition of CoherentTerms.
///
/// Canonical means: no two terms share (spin, label) within merge_tol, no term has
/// |amp| <= amp_tol, and terms are ordered by spin (Up first) then (Re alpha, Im alpha).
class SpinMotionState {
public:
    SpinMotionState() = default;

    /// Canonicalises the given terms. Throws GuardViolation if a label exceeds alpha_max
    /// and InvalidArgument on non-finite amplitudes or labels.
    explicit SpinMotionState(std::vector<CoherentTerm> terms, const Tolerances& tol = {});

    static SpinMotionState coherent(Spin spin, CoherentLabel label, Complex amp = 1.0);

    std::span<const CoherentTerm> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }

    friend bool operator==(const SpinMotionState&, const SpinMotionState&) = default;

private:
    struct Trusted {};
    SpinMotionState(Trusted, std::vector<CoherentTerm> terms) : terms_(std::move(terms)) {}
    friend SpinMotionState canonicalize(std::span<const CoherentTerm>, const Tolerances&);

    std::vector<CoherentTerm> terms_;
};

struct ThermalEnsemble {
    double nbar = 0.0;

    explicit ThermalEnsemble(double mean_phonons = 0.0);
};

/// <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b).
Complex overlap(CoherentLabel a, CoherentLabel b) noexcept;

Complex inner(const SpinMotionState& psi, const SpinMotionState& phi) noexcept;

/// Inner product restricted to one spin sector: <psi|P_s|phi>.
Complex inner(const SpinMotionState& psi, const SpinMotionState& phi, Spin sector) noexcept;

double norm(const SpinMotionState& psi) noexcept;

SpinMotionState canonicalize(std::span<const CoherentTerm> terms, const Tolerances& tol = {});

/// Number of distinct motional labels irrespective of spin, within tol.
std::size_t distinct_labels(const SpinMotionState& psi, double tol = 1e-9);

/// Motional labels irrespective of spin, deduplicated within tol, in canonical order.
std::vector<CoherentLabel> motional_labels(const SpinMotionState& psi, double tol = 1e-9);

/// Multiplies every amplitude by `factor`.
SpinMotionState scaled(const SpinMotionState& psi, Complex factor);

}  // namespace catlab
