#pragma once

// Measured quantities: spin-up brightness, thermal averages, Ramsey fringe
// contrast, closed-form contrast laws, peak-contrast fitting and fidelity
// bookkeeping.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "catlab/program.hpp"

namespace catlab {

/// <psi|P_up|psi> / <psi|psi>. Throws ZeroNorm.
double brightness(const SpinMotionState& psi);

struct BrightnessSample {
    double theta;
    double phi_analysis;
    double value;
};

struct QuadratureSpec {
    int nodes = 24;                  // per axis
    bool check_convergence = false;  // also evaluate with 2*nodes and compare
    double tol = 1e-8;
};

struct ThermalResult {
    double value;
    bool converged;      // true unless the convergence check ran and failed
    double change;       // |B(2n) - B(n)| when checked, else 0
};

/// Average of the final brightness over a thermal distribution of initial coherent
/// labels |s>|beta>, weight e^{-|beta|^2/nbar}/(pi nbar), by a tensor Gauss-Hermite rule.
/// nbar = 0 evaluates the pure state |s>|0>.
ThermalResult thermal_brightness(const PulseProgram& program, Spin initial_spin, const ThermalEnsemble& ens,
                                 const ExecutionContext& ctx, const QuadratureSpec& quad = {});

struct MonteCarloResult {
    double value;
    double std_error;
};

/// Sampling estimate of the same thermal average, for validating the quadrature.
MonteCarloResult thermal_brightness_mc(const PulseProgram& program, Spin initial_spin, const ThermalEnsemble& ens,
                                       const ExecutionContext& ctx, int samples, std::uint64_t seed);

/// Least-squares fit value(phi) = offset + b cos(phi) + c sin(phi).
struct FringeFit {
    double offset;
    double amplitude;      // sqrt(b^2 + c^2)
    double phase;          // value peaks at phi = phase
    double amplitude_err;  // from residuals; 0 when the fit has no spare degrees of freedom
    bool degenerate;       // flat fringe
};

FringeFit fit_fringe(std::span<const double> phases, std::span<const double> values);

/// Evenly spaced analysis phases k*2pi/n, k < n.
std::vector<double> analysis_phases(int n);

enum class ContrastModelKind { Cat2, Cat34, Cat68 };
const char* to_string(ContrastModelKind k) noexcept;
ContrastModelKind contrast_model_from_string(std::string_view s);

struct ContrastPoint {
    double theta;
    double contrast;      // peak-to-peak brightness swing = 2 * fringe amplitude
    double contrast_err;
    bool degenerate;
};

struct ContrastCurve {
    std::vector<ContrastPoint> points;
    double c0_fit = 1.0;
    ContrastModelKind model = ContrastModelKind::Cat2;
};

struct ScanOptions {
    QuadratureSpec quad{};
    unsigned threads = 1;
    std::string theta_variable = "theta";
    std::string phase_variable = "phi";
};

/// For each theta, brightness is sampled at every analysis phase and fitted to a
/// cosine; contrast is twice the fitted amplitude (an ideal revival gives 1).
/// Throws InvalidArgument with fewer than 4 analysis phases or when they do not span 2 pi.
ContrastCurve contrast_scan(const PulseProgram& program, Spin initial_spin, std::span<const double> thetas,
                            const ThermalEnsemble& ens, std::span<const double> phases, const ExecutionContext& ctx,
                            const ScanOptions& opts = {});

/// C(theta) = c0 exp(-4 |alpha|^2 (1 - cos theta)).
double contrast_closed_form(double theta, double alpha_magnitude, double c0);

/// Thermal broadening of the same law: exponent scaled by (1 + 2 nbar).
double contrast_closed_form_thermal(double theta, double alpha_magnitude, double c0, double nbar);

/// Full width at half maximum of a revival peaked at `center`, found by bisection of
/// f(center +- x) = f(center)/2 on each side within [0, max_half_width].
double revival_fwhm(const std::function<double(double)>& contrast, double center, double max_half_width,
                    double tol = 1e-10);

/// FWHM of the closed-form revival for |alpha|; approaches 2 sqrt(ln 2 / 2)/|alpha| ~ 1.18/|alpha|.
double fwhm_closed_form(double alpha_magnitude);

/// Three-/four-component thermal brightness in closed form, with the microwave
/// phases phi1 (preparation), phi2 (middle), phi3 (analysis) of the cat34 preset:
///   1/4 [1 + e^{16 k eta^2 (cos t - 1)} cos(phi1 - phi3)]
/// + 1/4 [1 - e^{-32 k eta^2 cos^2(t/2)} cos(2 phi2 - phi1 - phi3)]
/// - c   e^{-8 k eta^2} sin(16 eta^2 sin t) sin(phi2 - phi3),       k = 1 + 2 nbar.
/// c = 1/2 is exact for the operator sequence of the preset.
double cat34_brightness_closed_form(double theta, double phi1, double phi2, double phi3, double nbar,
                                    double eta = 0.2, double third_term_coefficient = 0.5);

struct PeakFit {
    double c0;
    double std_error;
    double residual_rms;
};

/// Amplitude-only least squares y ~ c0 * shape: c0 = sum(y f) / sum(f^2).
/// Throws InvalidArgument on empty input or an identically zero shape.
PeakFit fit_peak_contrast(std::span<const double> values, std::span<const double> shape);

struct ContrastModel {
    ContrastModelKind kind = ContrastModelKind::Cat2;
    double alpha = 1.0;          // Cat2: |alpha|
    double nbar = 0.0;           // Cat2 broadening and Cat34 thermal average
    double eta = 0.2;
    unsigned threads = 1;
};

/// Model lineshape for ideal operations (c0 = 1) at each theta. Cat34/Cat68 are simulated
/// (Cat68 at beta = 0) with all preparation phases zero.
std::vector<double> model_shape(const ContrastModel& model, std::span<const double> thetas);

PeakFit fit_peak_contrast(const ContrastCurve& curve, const ContrastModel& model);

/// F = sqrt(c0).
double fidelity_from_contrast(double c0);

/// Per-kick fidelity f with c0 = f^(4 n): two sets of n kicks, F = c0^(1/2) = f^(2n).
double sdk_fidelity_estimate(double c0, int n_kicks_per_set);
double contrast_from_sdk_fidelity(double f, int n_kicks_per_set);

}  // namespace catlab
