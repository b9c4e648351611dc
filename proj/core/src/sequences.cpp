#include "catlab/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catlab/error.hpp"

namespace catlab {

namespace {

constexpr double kEfficiencyWarning = 0.95;

// |sum_{k<n} e^{-i k delta}| / n.
double every_pulse_efficiency(int n, double delta) {
    const double half = 0.5 * delta;
    if (std::abs(std::sin(half)) < 1e-15) return 1.0;
    return std::abs(std::sin(n * half) / std::sin(half)) / n;
}

std::string kick_set_text(int n_kicks, Scheme scheme, const TrapParams& trap) {
    std::string text;
    const std::string gap =
        scheme == Scheme::HalfPeriod ? std::string("pi") : format_number(trap.phase_per_pulse());
    for (int k = 0; k < n_kicks; ++k) {
        if (k > 0) text += "WAIT " + gap + "\n";
        const bool forward = scheme == Scheme::HalfPeriod || k % 2 == 0;
        text += forward ? "SDK +\n" : "SDK -\n";
    }
    return text;
}

}  // namespace

const char* to_string(Scheme s) noexcept { return s == Scheme::EveryPulse ? "every-pulse" : "half-period"; }

Scheme scheme_from_string(std::string_view s) {
    if (s == "every-pulse" || s == "everypulse" || s == "EveryPulse") return Scheme::EveryPulse;
    if (s == "half-period" || s == "halfperiod" || s == "HalfPeriod") return Scheme::HalfPeriod;
    throw InvalidArgument("unknown scheme '" + std::string(s) + "' (expected every-pulse or half-period)");
}

PulseProgram build_two_component(int n_kicks, Scheme scheme, const TrapParams& trap) {
    if (n_kicks < 1) throw InvalidArgument("n_kicks must be >= 1");
    trap.validate();
    const std::string name = scheme == Scheme::EveryPulse ? "cat2-everypulse-set" : "cat2-halfperiod-set";
    return parse_program(kick_set_text(n_kicks, scheme, trap), name);
}

std::optional<std::string> every_pulse_warning(int n_kicks, const TrapParams& trap) {
    const double eff = every_pulse_efficiency(n_kicks, trap.phase_per_pulse());
    if (eff >= kEfficiencyWarning) return std::nullopt;
    return "n_kicks = " + std::to_string(n_kicks) + " is not << 2 pi f_rep / omega = " +
           format_number(trap.pulses_per_period()) + "; trap rotation reduces growth to " +
           format_number(std::round(eff * 1e4) / 1e2) + "% of 2 N eta";
}

PulseProgram build_reversal(const PulseProgram& kick_set, const Expr& theta) {
    std::vector<Instruction> out = kick_set.instructions();
    for (const auto& instr : kick_set.instructions()) {
        if (std::holds_alternative<UwaveInstr>(instr)) {
            throw InvalidArgument("build_reversal expects a kick set without microwave pulses");
        }
    }
    out.emplace_back(WaitInstr{theta});
    const auto& src = kick_set.instructions();
    out.insert(out.end(), src.rbegin(), src.rend());
    return PulseProgram(kick_set.name() + "+reversal", std::move(out));
}

PulseProgram build_two_component_ramsey(int n_kicks, Scheme scheme, const TrapParams& trap) {
    const PulseProgram body = build_reversal(build_two_component(n_kicks, scheme, trap));
    std::vector<Instruction> out;
    out.emplace_back(UwaveInstr{Expr(0.0), Expr::binary('/', Expr::pi(), Expr(2.0))});
    out.insert(out.end(), body.instructions().begin(), body.instructions().end());
    out.emplace_back(UwaveInstr{Expr::variable("phi"), Expr::binary('/', Expr::pi(), Expr(2.0))});
    return PulseProgram(scheme == Scheme::EveryPulse ? "cat2-everypulse" : "cat2-halfperiod", std::move(out));
}

PulseProgram build_multicomponent(int level, const Expr& theta) {
    // Each SDK set is two kicks a half period apart.
    const std::string set = "SDK +\nWAIT pi\nSDK +\n";
    const std::string wait_theta = "WAIT " + theta.format() + "\n";
    std::string text;
    if (level == 34) {
        text = "# program: cat34\n"
               "UW phi1 pi/2\n" + set +
               "UW phi2 pi/2\n" + wait_theta + set +
               "UW phi pi/2\n";
    } else if (level == 68) {
        text = "# program: cat68\n"
               "UW phi1 pi/2\n" + set +
               "UW phi2 pi/2\n"
               "WAIT pi/2\n" + set +
               "WAIT pi\n" + set +
               "UW phi3 pi/2\n" + wait_theta + set +
               "UW phi pi/2\n";
    } else {
        throw InvalidArgument("multicomponent level must be 34 or 68");
    }
    return parse_program(text);
}

PulseProgram build_control_variant(int m, const Expr& theta) {
    if (m < 0) throw InvalidArgument("control variant m must be >= 0");
    const std::string set = "SDK +\nWAIT pi\nSDK +\n";
    const std::string text = "# program: control-m" + std::to_string(m) + "\n" +
                             "UW phi1 pi/2\n" + set + "UW phi2 " + std::to_string(m) + "*pi\n" + "WAIT " +
                             theta.format() + "\n" + set + "UW phi pi/2\n";
    return parse_program(text);
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"cat2-everypulse", "cat2-halfperiod", "cat34",
                                                   "cat68",           "control-m0",      "control-m1"};
    return names;
}

Preset preset(std::string_view name, const PresetOptions& opts) {
    if (name == "cat2-everypulse") {
        return {build_two_component_ramsey(opts.n_kicks, Scheme::EveryPulse, opts.trap), Spin::Down};
    }
    if (name == "cat2-halfperiod") {
        return {build_two_component_ramsey(opts.n_kicks, Scheme::HalfPeriod, opts.trap), Spin::Down};
    }
    if (name == "cat34") return {build_multicomponent(34), Spin::Down};
    // The 6/8 operator string starts from spin up, the 3/4 one from spin down.
    if (name == "cat68") return {build_multicomponent(68), Spin::Up};
    if (name == "control-m0") return {build_control_variant(0), Spin::Down};
    if (name == "control-m1") return {build_control_variant(1), Spin::Down};
    throw InvalidArgument("unknown preset '" + std::string(name) + "'");
}

SchedulePlan plan_schedule(double target_delta_alpha, Scheme scheme, const TrapParams& trap, double eta) {
    if (!(target_delta_alpha > 0.0) || !std::isfinite(target_delta_alpha)) {
        throw InvalidArgument("target delta alpha must be finite and > 0");
    }
    if (!(eta > 0.0)) throw InvalidArgument("eta must be > 0");
    trap.validate();

    // Guard against 4.0/0.4 landing a hair above an integer.
    const int n = std::max(1, static_cast<int>(std::ceil(target_delta_alpha / (2 * eta) - 1e-9)));
    SchedulePlan plan{n, scheme, 0.0, 2 * n * eta, 1.0, std::nullopt};
    if (scheme == Scheme::EveryPulse) {
        plan.wall_time = (n - 1) / trap.f_rep;
        plan.growth_efficiency = every_pulse_efficiency(n, trap.phase_per_pulse());
        plan.delta_alpha *= plan.growth_efficiency;
        plan.warning = every_pulse_warning(n, trap);
    } else {
        plan.wall_time = (n - 1) * std::numbers::pi / trap.omega;
    }
    return plan;
}

}  // namespace catlab
