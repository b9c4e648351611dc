#include "catlab/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "catlab/error.hpp"

namespace catlab::fock {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_n_max(int n_max) {
    if (n_max < 0 || n_max > kMaxTruncation) {
        throw InvalidArgument("n_max must lie in [0, " + std::to_string(kMaxTruncation) + "]");
    }
}

int truncation_for_radius(double r) {
    return std::min(kMaxTruncation, static_cast<int>(std::ceil(r * r + 6 * r + 10)));
}

// Generalised Laguerre L_n^{(k)}(x) by the three-term recurrence.
double laguerre(int n, int k, double x) {
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + k - x;
    for (int j = 1; j < n; ++j) {
        const double next = ((2 * j + 1 + k - x) * cur - (j + k) * prev) / (j + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

// Poisson tail 1 - sum_{n <= n_max} e^{-r2} r2^n / n!.
double coherent_tail(double r2, int n_max) {
    double term = std::exp(-r2);
    double kept = term;
    for (int n = 1; n <= n_max; ++n) {
        term *= r2 / n;
        kept += term;
    }
    return std::max(0.0, 1.0 - kept);
}

}  // namespace

int recommended_n_max(const SpinMotionState& psi) {
    double r = 0.0;
    for (const auto& t : psi.terms()) r = std::max(r, t.label.magnitude());
    return truncation_for_radius(r);
}

int auto_n_max(const PulseProgram& program, const SpinMotionState& initial, double eta) {
    double r = 0.0;
    for (const auto& t : initial.terms()) r = std::max(r, t.label.magnitude());
    // Free evolution preserves |alpha|; each kick moves it by at most eta.
    r += static_cast<double>(program.sdk_count()) * eta;
    return truncation_for_radius(r);
}

Eigen::VectorXcd coherent_amplitudes(Complex alpha, int n_max) {
    check_n_max(n_max);
    Eigen::VectorXcd c(n_max + 1);
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n <= n_max; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    return c;
}

std::pair<FockState, TruncationReport> encode(const SpinMotionState& psi, int n_max) {
    check_n_max(n_max);
    const Eigen::Index dim = n_max + 1;
    FockState s{n_max, Eigen::VectorXcd::Zero(2 * dim)};
    double leaked_amp = 0.0;
    for (const auto& t : psi.terms()) {
        const Eigen::Index offset = t.spin == Spin::Up ? 0 : dim;
        s.vec.segment(offset, dim) += t.amp * coherent_amplitudes(t.label.value(), n_max);
        leaked_amp += std::abs(t.amp) * std::sqrt(coherent_tail(std::norm(t.label.value()), n_max));
    }
    return {std::move(s), TruncationReport{leaked_amp * leaked_amp, n_max}};
}

Eigen::MatrixXcd displacement_matrix(Complex gamma, int n_max) {
    check_n_max(n_max);
    const Eigen::Index dim = n_max + 1;
    Eigen::MatrixXcd d(dim, dim);
    const double x = std::norm(gamma);
    const double gauss = std::exp(-0.5 * x);
    for (int m = 0; m <= n_max; ++m) {
        for (int n = 0; n <= n_max; ++n) {
            // <m|D|n> = sqrt(n!/m!) g^{m-n} e^{-|g|^2/2} L_n^{(m-n)}(|g|^2) for m >= n,
            // and the (-conj g) mirror for m < n.
            const int lo = std::min(m, n);
            const int k = std::abs(m - n);
            const Complex base = m >= n ? gamma : -std::conj(gamma);
            const double log_ratio = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + k + 1.0));
            const Complex power = k == 0 ? Complex(1.0) : std::pow(base, k);
            d(m, n) = std::exp(log_ratio) * power * gauss * laguerre(lo, k, x);
        }
    }
    return d;
}

Eigen::MatrixXcd sdk_matrix(const KickParams& k, int n_max) {
    k.validate();
    const Eigen::Index dim = n_max + 1;
    const double d = sign(k.direction);
    const Complex up_from_down = std::polar(1.0, k.phi_lambda);
    const Complex down_from_up = std::polar(1.0, -k.phi_lambda);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
    m.block(0, dim, dim, dim) = up_from_down * displacement_matrix(Complex(0.0, d * k.eta), n_max);
    m.block(dim, 0, dim, dim) = down_from_up * displacement_matrix(Complex(0.0, -d * k.eta), n_max);
    return m;
}

Eigen::MatrixXcd evolve_matrix(double theta, int n_max) {
    check_n_max(n_max);
    const Eigen::Index dim = n_max + 1;
    Eigen::VectorXcd diag(2 * dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        diag(n) = std::polar(1.0, -theta * static_cast<double>(n));
        diag(dim + n) = diag(n);
    }
    return diag.asDiagonal();
}

Eigen::MatrixXcd uwave_matrix(double phi_mu, double area, int n_max) {
    check_n_max(n_max);
    if (!(area >= 0.0)) throw InvalidArgument("microwave area must be >= 0");
    const Eigen::Index dim = n_max + 1;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    const double c = std::cos(0.5 * area);
    const double s = std::sin(0.5 * area);
    const Complex e = std::polar(1.0, phi_mu);
    Eigen::MatrixXcd m(2 * dim, 2 * dim);
    m.block(0, 0, dim, dim) = c * id;
    m.block(0, dim, dim, dim) = (e * s) * id;
    m.block(dim, 0, dim, dim) = (-std::conj(e) * s) * id;
    m.block(dim, dim, dim, dim) = c * id;
    return m;
}

OracleRun oracle_run(const PulseProgram& program, const FockState& initial, const ExecutionContext& ctx) {
    const int n_max = initial.n_max;
    check_n_max(n_max);
    const Eigen::Index dim = n_max + 1;
    FockState s = initial;
    double phi_lambda = ctx.phi_lambda;

    // Displacements depend only on the direction; phases are applied per kick.
    const Eigen::MatrixXcd d_plus = displacement_matrix(Complex(0.0, ctx.eta), n_max);
    const Eigen::MatrixXcd d_minus = displacement_matrix(Complex(0.0, -ctx.eta), n_max);

    for (const auto& instr : program.instructions()) {
        std::visit(Overloaded{
                       [&](const SdkInstr& k) {
                           const bool fwd = k.direction == KickDirection::Forward;
                           const Eigen::VectorXcd up = s.vec.head(dim);
                           const Eigen::VectorXcd down = s.vec.tail(dim);
                           s.vec.head(dim) = std::polar(1.0, phi_lambda) * ((fwd ? d_plus : d_minus) * down);
                           s.vec.tail(dim) = std::polar(1.0, -phi_lambda) * ((fwd ? d_minus : d_plus) * up);
                       },
                       [&](const WaitInstr& w) {
                           const double theta = w.theta.evaluate(ctx.bindings);
                           for (Eigen::Index n = 0; n < dim; ++n) {
                               const Complex ph = std::polar(1.0, -theta * static_cast<double>(n));
                               s.vec(n) *= ph;
                               s.vec(dim + n) *= ph;
                           }
                       },
                       [&](const UwaveInstr& u) {
                           const double area = u.area.evaluate(ctx.bindings);
                           const double c = std::cos(0.5 * area);
                           const double sn = std::sin(0.5 * area);
                           const Complex e = std::polar(1.0, u.phi_mu.evaluate(ctx.bindings));
                           const Eigen::VectorXcd up = s.vec.head(dim);
                           const Eigen::VectorXcd down = s.vec.tail(dim);
                           s.vec.head(dim) = c * up + (e * sn) * down;
                           s.vec.tail(dim) = (-std::conj(e) * sn) * up + c * down;
                       },
                       [&](const SetPhaseInstr& p) { phi_lambda = p.phi_lambda.evaluate(ctx.bindings); },
                   },
                   instr);
    }
    const double drift = std::abs(s.vec.squaredNorm() - initial.vec.squaredNorm());
    return {std::move(s), drift};
}

double brightness(const FockState& s) {
    const double total = s.vec.squaredNorm();
    if (!(total > 1e-300)) throw ZeroNorm("brightness of a zero-norm Fock state");
    return s.up().squaredNorm() / total;
}

}  // namespace catlab::fock
