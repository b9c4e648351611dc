#pragma once

// Experiment schedules as pulse programs: two-component cats generated with every
// laser pulse or at every half trap period, their reversal, the 3/4- and
// 6/8-component sequences, the control variants and schedule planning.
//
// Preset variables: `theta` (free evolution between the last two kick sets),
// `phi` (analysis pulse phase), `phi1`..`phi3` (earlier microwave phases).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catlab/program.hpp"

namespace catlab {

enum class Scheme { EveryPulse, HalfPeriod };

const char* to_string(Scheme s) noexcept;
Scheme scheme_from_string(std::string_view s);

/// Kick set of n_kicks SDKs. EveryPulse alternates direction with a WAIT of one laser
/// period of trap phase (omega/f_rep) between kicks; HalfPeriod keeps the direction
/// and waits pi between kicks.
PulseProgram build_two_component(int n_kicks, Scheme scheme, const TrapParams& trap = {});

/// Warning text when an EveryPulse train is long enough for the trap rotation to eat
/// noticeably into the growth (efficiency below 95%).
std::optional<std::string> every_pulse_warning(int n_kicks, const TrapParams& trap = {});

/// Appends WAIT theta and the kick set replayed in reverse time order.
PulseProgram build_reversal(const PulseProgram& kick_set, const Expr& theta = Expr::variable("theta"));

/// Full Ramsey experiment: UW 0 pi/2, kick set, reversal, UW phi pi/2.
PulseProgram build_two_component_ramsey(int n_kicks, Scheme scheme, const TrapParams& trap = {});

/// level 34 or 68; the operator strings are transcribed right-to-left.
PulseProgram build_multicomponent(int level, const Expr& theta = Expr::variable("theta"));

/// cat34 with the middle pi/2 pulse replaced by an m*pi pulse.
PulseProgram build_control_variant(int m, const Expr& theta = Expr::variable("theta"));

struct Preset {
    PulseProgram program;
    Spin initial_spin;
};

struct PresetOptions {
    int n_kicks = 10;     // kicks per set for the two-component presets
    TrapParams trap{};
};

/// cat2-everypulse, cat2-halfperiod, cat34, cat68, control-m0, control-m1.
const std::vector<std::string>& preset_names();
Preset preset(std::string_view name, const PresetOptions& opts = {});

struct SchedulePlan {
    int n_kicks;
    Scheme scheme;
    double wall_time;         // seconds from first to last kick
    double delta_alpha;       // separation reached, including trap rotation for EveryPulse
    double growth_efficiency; // delta_alpha / (2 n eta)
    std::optional<std::string> warning;
};

/// n_kicks = ceil(target / 2 eta). EveryPulse kicks sit on the laser-pulse grid,
/// HalfPeriod kicks every pi/omega.
SchedulePlan plan_schedule(double target_delta_alpha, Scheme scheme, const TrapParams& trap = {},
                           double eta = 0.2);

}  // namespace catlab
