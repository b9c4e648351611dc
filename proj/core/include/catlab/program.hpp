#pragma once

// Pulse programs: a line-oriented text format driving the operators.
//
//   # program: cat2-halfperiod      optional name header
//   UW 0 pi/2                       microwave pulse, phase then area
//   SDK +                           state-dependent kick, direction + or -
//   WAIT pi                         free evolution by a trap phase
//   SETPHASE 0.3                    optical phase for subsequent kicks
//
// Mnemonics are case-insensitive, `#` starts a comment, and every numeric
// parameter is an expression that may reference variables bound at run time.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "catlab/expression.hpp"
#include "catlab/operators.hpp"

namespace catlab {

struct SdkInstr {
    KickDirection direction = KickDirection::Forward;
    friend bool operator==(const SdkInstr&, const SdkInstr&) = default;
};
struct WaitInstr {
    Expr theta{0.0};
    friend bool operator==(const WaitInstr&, const WaitInstr&) = default;
};
struct UwaveInstr {
    Expr phi_mu{0.0};
    Expr area{0.0};
    friend bool operator==(const UwaveInstr&, const UwaveInstr&) = default;
};
struct SetPhaseInstr {
    Expr phi_lambda{0.0};
    friend bool operator==(const SetPhaseInstr&, const SetPhaseInstr&) = default;
};

using Instruction = std::variant<SdkInstr, WaitInstr, UwaveInstr, SetPhaseInstr>;

class PulseProgram {
public:
    /// Throws InvalidArgument if empty or if a constant WAIT angle / UW area is negative.
    PulseProgram(std::string name, std::vector<Instruction> instructions);

    const std::string& name() const noexcept { return name_; }
    const std::vector<Instruction>& instructions() const noexcept { return instructions_; }

    std::size_t sdk_count() const noexcept;
    /// Odd kick count leaves the optical phase in the result.
    bool phase_sensitive() const noexcept { return sdk_count() % 2 == 1; }

    /// Variables referenced anywhere in the program, in first-use order.
    std::vector<std::string> variables() const;

    friend bool operator==(const PulseProgram&, const PulseProgram&) = default;

private:
    std::string name_;
    std::vector<Instruction> instructions_;
};

/// Throws ParseError with the 1-based line and column of the offending token.
PulseProgram parse_program(std::string_view text, std::string default_name = "program");

std::string format_program(const PulseProgram& program);

std::string format_instruction(const Instruction& instr);

struct ExecutionContext {
    double eta = 0.2;
    double phi_lambda = 0.0;     // initial optical phase; SETPHASE overrides
    Bindings bindings;
    Tolerances tolerances;
};

SpinMotionState execute(const PulseProgram& program, const SpinMotionState& initial,
                        const ExecutionContext& ctx);

/// Concatenates instruction lists under a new name.
PulseProgram concat(std::string name, const PulseProgram& first, const PulseProgram& second);

}  // namespace catlab
