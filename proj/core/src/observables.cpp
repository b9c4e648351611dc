#include "catlab/observables.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "catlab/error.hpp"
#include "catlab/parallel.hpp"
#include "catlab/quadrature.hpp"
#include "catlab/sequences.hpp"

namespace catlab {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kFlatFringe = 1e-14;

double run_brightness(const PulseProgram& program, Spin spin, Complex beta, const ExecutionContext& ctx) {
    const auto initial = SpinMotionState::coherent(spin, CoherentLabel(beta));
    return brightness(execute(program, initial, ctx));
}

double gauss_hermite_average(const PulseProgram& program, Spin spin, double nbar, const ExecutionContext& ctx,
                             int nodes) {
    const QuadratureRule rule = gauss_hermite(nodes);
    // beta = sqrt(nbar) (x + i y) maps e^{-|beta|^2/nbar} onto e^{-x^2 - y^2}.
    const double scale = std::sqrt(nbar);
    double sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
        double row = 0.0;
        for (int j = 0; j < nodes; ++j) {
            const Complex beta(scale * rule.nodes[i], scale * rule.nodes[j]);
            row += rule.weights[j] * run_brightness(program, spin, beta, ctx);
        }
        sum += rule.weights[i] * row;
    }
    return sum / std::numbers::pi;
}

bool spans_circle(std::span<const double> phases) {
    std::vector<double> p;
    p.reserve(phases.size());
    for (double x : phases) p.push_back(std::fmod(std::fmod(x, kTwoPi) + kTwoPi, kTwoPi));
    std::sort(p.begin(), p.end());
    double max_gap = kTwoPi - (p.back() - p.front());
    for (std::size_t i = 1; i < p.size(); ++i) max_gap = std::max(max_gap, p[i] - p[i - 1]);
    return max_gap <= std::numbers::pi + 1e-12;
}

}  // namespace

double brightness(const SpinMotionState& psi) {
    const double total = inner(psi, psi).real();
    if (!(total > 1e-300)) throw ZeroNorm("brightness of a zero-norm state");
    const double up = inner(psi, psi, Spin::Up).real();
    return std::clamp(up / total, 0.0, 1.0);
}

ThermalResult thermal_brightness(const PulseProgram& program, Spin initial_spin, const ThermalEnsemble& ens,
                                 const ExecutionContext& ctx, const QuadratureSpec& quad) {
    if (quad.nodes < 1) throw InvalidArgument("quadrature needs at least one node per axis");
    if (ens.nbar == 0.0) return {run_brightness(program, initial_spin, 0.0, ctx), true, 0.0};
    const double value = gauss_hermite_average(program, initial_spin, ens.nbar, ctx, quad.nodes);
    if (!quad.check_convergence) return {value, true, 0.0};
    const double refined = gauss_hermite_average(program, initial_spin, ens.nbar, ctx, 2 * quad.nodes);
    const double change = std::abs(refined - value);
    return {value, change <= quad.tol, change};
}

MonteCarloResult thermal_brightness_mc(const PulseProgram& program, Spin initial_spin, const ThermalEnsemble& ens,
                                       const ExecutionContext& ctx, int samples, std::uint64_t seed) {
    if (samples < 2) throw InvalidArgument("Monte Carlo needs at least two samples");
    std::mt19937_64 rng(seed);
    // Re and Im of beta are independent normals with variance nbar/2.
    std::normal_distribution<double> axis(0.0, std::sqrt(ens.nbar / 2));
    double mean = 0.0;
    double m2 = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double re = axis(rng);
        const double im = axis(rng);
        const double b = run_brightness(program, initial_spin, Complex(re, im), ctx);
        const double delta = b - mean;
        mean += delta / (k + 1);
        m2 += delta * (b - mean);
    }
    return {mean, std::sqrt(m2 / (samples - 1) / samples)};
}

FringeFit fit_fringe(std::span<const double> phases, std::span<const double> values) {
    if (phases.size() != values.size()) throw InvalidArgument("phase and value counts differ");
    if (phases.size() < 3) throw InvalidArgument("fringe fit needs at least three points");
    const auto n = static_cast<Eigen::Index>(phases.size());
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = std::cos(phases[i]);
        design(i, 2) = std::sin(phases[i]);
        y(i) = values[i];
    }
    const Eigen::Matrix3d normal = design.transpose() * design;
    const Eigen::Vector3d coef = normal.ldlt().solve(design.transpose() * y);
    const double b = coef(1);
    const double c = coef(2);
    const double amplitude = std::hypot(b, c);

    FringeFit fit{coef(0), amplitude, std::atan2(c, b), 0.0, amplitude <= kFlatFringe};
    if (n > 3 && !fit.degenerate) {
        const double rss = (y - design * coef).squaredNorm();
        const Eigen::Matrix3d cov = normal.inverse() * (rss / static_cast<double>(n - 3));
        const double var = (b * b * cov(1, 1) + c * c * cov(2, 2) + 2 * b * c * cov(1, 2)) / (amplitude * amplitude);
        fit.amplitude_err = std::sqrt(std::max(0.0, var));
    }
    if (fit.degenerate) fit.amplitude = 0.0;
    return fit;
}

std::vector<double> analysis_phases(int n) {
    if (n < 1) throw InvalidArgument("need at least one analysis phase");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = kTwoPi * k / n;
    return out;
}

const char* to_string(ContrastModelKind k) noexcept {
    switch (k) {
        case ContrastModelKind::Cat2: return "cat2";
        case ContrastModelKind::Cat34: return "cat34";
        case ContrastModelKind::Cat68: return "cat68";
    }
    return "cat2";
}

ContrastModelKind contrast_model_from_string(std::string_view s) {
    if (s == "cat2") return ContrastModelKind::Cat2;
    if (s == "cat34") return ContrastModelKind::Cat34;
    if (s == "cat68") return ContrastModelKind::Cat68;
    throw InvalidArgument("unknown contrast model '" + std::string(s) + "' (expected cat2, cat34 or cat68)");
}

ContrastCurve contrast_scan(const PulseProgram& program, Spin initial_spin, std::span<const double> thetas,
                            const ThermalEnsemble& ens, std::span<const double> phases, const ExecutionContext& ctx,
                            const ScanOptions& opts) {
    if (phases.size() < 4) throw InvalidArgument("contrast scan needs at least 4 analysis phases");
    if (!spans_circle(phases)) throw InvalidArgument("analysis phases must span 2 pi");

    ContrastCurve curve;
    curve.points.resize(thetas.size());
    parallel_for(thetas.size(), opts.threads, [&](std::size_t i) {
        ExecutionContext local = ctx;
        local.bindings.set(opts.theta_variable, thetas[i]);
        std::vector<double> values(phases.size());
        for (std::size_t k = 0; k < phases.size(); ++k) {
            local.bindings.set(opts.phase_variable, phases[k]);
            values[k] = thermal_brightness(program, initial_spin, ens, local, opts.quad).value;
        }
        const FringeFit fit = fit_fringe(phases, values);
        curve.points[i] = {thetas[i], std::min(1.0, 2 * fit.amplitude), 2 * fit.amplitude_err, fit.degenerate};
    });
    return curve;
}

double contrast_closed_form(double theta, double alpha_magnitude, double c0) {
    if (!(c0 >= 0.0 && c0 <= 1.0)) throw InvalidArgument("c0 must lie in [0, 1]");
    return c0 * std::exp(-4 * alpha_magnitude * alpha_magnitude * (1 - std::cos(theta)));
}

double contrast_closed_form_thermal(double theta, double alpha_magnitude, double c0, double nbar) {
    if (!(c0 >= 0.0 && c0 <= 1.0)) throw InvalidArgument("c0 must lie in [0, 1]");
    return c0 * std::exp(-4 * (1 + 2 * nbar) * alpha_magnitude * alpha_magnitude * (1 - std::cos(theta)));
}

double revival_fwhm(const std::function<double(double)>& contrast, double center, double max_half_width, double tol) {
    const double half = 0.5 * contrast(center);
    auto side = [&](double dir) {
        double lo = 0.0;
        double hi = max_half_width;
        if (contrast(center + dir * hi) > half) throw InvalidArgument("revival does not fall to half height");
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            (contrast(center + dir * mid) > half ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    return side(+1.0) + side(-1.0);
}

double fwhm_closed_form(double alpha_magnitude) {
    if (!(alpha_magnitude > 0.0)) throw InvalidArgument("|alpha| must be > 0");
    // Half height needs 4|alpha|^2 (1 - cos x) = ln 2, i.e. 1 - cos x <= 2.
    if (std::log(2.0) / (4 * alpha_magnitude * alpha_magnitude) > 2.0) {
        throw InvalidArgument("revival never falls to half height for this |alpha|");
    }
    return revival_fwhm([&](double t) { return contrast_closed_form(t, alpha_magnitude, 1.0); }, kTwoPi,
                        std::numbers::pi);
}

double cat34_brightness_closed_form(double theta, double phi1, double phi2, double phi3, double nbar, double eta,
                                    double third_term_coefficient) {
    const double k = 1 + 2 * nbar;
    const double e2 = eta * eta;
    const double c = std::cos(0.5 * theta);
    return 0.25 * (1 + std::exp(16 * k * e2 * (std::cos(theta) - 1)) * std::cos(phi1 - phi3)) +
           0.25 * (1 - std::exp(-32 * k * e2 * c * c) * std::cos(2 * phi2 - phi1 - phi3)) -
           third_term_coefficient * std::exp(-8 * k * e2) * std::sin(16 * e2 * std::sin(theta)) *
               std::sin(phi2 - phi3);
}

PeakFit fit_peak_contrast(std::span<const double> values, std::span<const double> shape) {
    if (values.empty()) throw InvalidArgument("cannot fit an empty curve");
    if (values.size() != shape.size()) throw InvalidArgument("value and model counts differ");
    double sff = 0.0;
    double syf = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        sff += shape[i] * shape[i];
        syf += values[i] * shape[i];
    }
    if (!(sff > 0.0)) throw InvalidArgument("model lineshape is identically zero");
    const double c0 = syf / sff;
    double rss = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double r = values[i] - c0 * shape[i];
        rss += r * r;
    }
    const auto n = static_cast<double>(values.size());
    const double stderr_c0 = values.size() > 1 ? std::sqrt(rss / (n - 1) / sff) : 0.0;
    return {c0, stderr_c0, std::sqrt(rss / n)};
}

std::vector<double> model_shape(const ContrastModel& model, std::span<const double> thetas) {
    std::vector<double> out;
    out.reserve(thetas.size());
    if (model.kind == ContrastModelKind::Cat2) {
        for (double t : thetas) out.push_back(contrast_closed_form_thermal(t, model.alpha, 1.0, model.nbar));
        return out;
    }
    const bool is34 = model.kind == ContrastModelKind::Cat34;
    const Preset p = preset(is34 ? "cat34" : "cat68");
    ExecutionContext ctx;
    ctx.eta = model.eta;
    ctx.bindings = Bindings{{"phi1", 0.0}, {"phi2", 0.0}, {"phi3", 0.0}};
    const ThermalEnsemble ens(is34 ? model.nbar : 0.0);
    const auto phases = analysis_phases(8);
    ScanOptions opts;
    opts.threads = model.threads;
    const ContrastCurve curve = contrast_scan(p.program, p.initial_spin, thetas, ens, phases, ctx, opts);
    for (const auto& pt : curve.points) out.push_back(pt.contrast);
    return out;
}

PeakFit fit_peak_contrast(const ContrastCurve& curve, const ContrastModel& model) {
    std::vector<double> thetas;
    std::vector<double> values;
    for (const auto& p : curve.points) {
        thetas.push_back(p.theta);
        values.push_back(p.contrast);
    }
    if (values.empty()) throw InvalidArgument("cannot fit an empty curve");
    const auto shape = model_shape(model, thetas);
    return fit_peak_contrast(values, shape);
}

double fidelity_from_contrast(double c0) {
    if (!(c0 >= 0.0)) throw InvalidArgument("contrast must be >= 0");
    return std::sqrt(c0);
}

double sdk_fidelity_estimate(double c0, int n_kicks_per_set) {
    if (n_kicks_per_set < 1) throw InvalidArgument("n_kicks_per_set must be >= 1");
    if (!(c0 > 0.0)) throw InvalidArgument("contrast must be > 0");
    return std::pow(std::sqrt(c0), 1.0 / (2.0 * n_kicks_per_set));
}

double contrast_from_sdk_fidelity(double f, int n_kicks_per_set) {
    if (n_kicks_per_set < 1) throw InvalidArgument("n_kicks_per_set must be >= 1");
    return std::pow(f, 4.0 * n_kicks_per_set);
}

}  // namespace catlab
