#include "catlab/program.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "catlab/error.hpp"

namespace catlab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

bool space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

struct Piece {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Piece> split_words(std::string_view line, std::size_t base_column) {
    std::vector<Piece> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && space(line[i])) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && !space(line[i])) ++i;
        out.push_back({line.substr(start, i - start), base_column + start});
    }
    return out;
}

bool is_op(char c) { return c == '+' || c == '-' || c == '*' || c == '/'; }

// Groups whitespace-separated words into expression arguments: a word glues to its
// neighbour across a dangling operator or an unclosed parenthesis.
std::vector<Piece> group_arguments(std::string_view line, const std::vector<Piece>& words) {
    std::vector<Piece> args;
    int depth = 0;
    bool glue_next = false;
    for (const auto& w : words) {
        const bool glue_prev = !args.empty() && (glue_next || depth > 0 || w.text.front() == '*' ||
                                                 w.text.front() == '/' || w.text == "+" || w.text == "-");
        if (glue_prev) {
            const std::size_t start = args.back().column;
            const std::size_t end = w.column + w.text.size();
            args.back().text = line.substr(start - 1, end - start);
        } else {
            args.push_back(w);
        }
        for (char c : w.text) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
        }
        glue_next = is_op(w.text.back());
    }
    return args;
}

void require_nonnegative(const Expr& e, const char* what, std::size_t line, std::size_t column) {
    if (e.is_constant() && e.evaluate() < 0.0) {
        throw ParseError(ParseError::Kind::Syntax, line, column, std::string(what) + " must be >= 0");
    }
}

}  // namespace

PulseProgram::PulseProgram(std::string name, std::vector<Instruction> instructions)
    : name_(std::move(name)), instructions_(std::move(instructions)) {
    if (instructions_.empty()) throw InvalidArgument("pulse program must contain at least one instruction");
    for (const auto& instr : instructions_) {
        if (const auto* w = std::get_if<WaitInstr>(&instr); w && w->theta.is_constant() && w->theta.evaluate() < 0) {
            throw InvalidArgument("WAIT angle must be >= 0");
        }
        if (const auto* u = std::get_if<UwaveInstr>(&instr); u && u->area.is_constant() && u->area.evaluate() < 0) {
            throw InvalidArgument("UW pulse area must be >= 0");
        }
    }
}

std::size_t PulseProgram::sdk_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(instructions_.begin(), instructions_.end(), [](const Instruction& i) {
        return std::holds_alternative<SdkInstr>(i);
    }));
}

std::vector<std::string> PulseProgram::variables() const {
    std::vector<std::string> out;
    auto add = [&out](const Expr& e) {
        for (auto& v : e.variables()) {
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
        }
    };
    for (const auto& instr : instructions_) {
        std::visit(Overloaded{
                       [](const SdkInstr&) {},
                       [&](const WaitInstr& w) { add(w.theta); },
                       [&](const UwaveInstr& u) {
                           add(u.phi_mu);
                           add(u.area);
                       },
                       [&](const SetPhaseInstr& s) { add(s.phi_lambda); },
                   },
                   instr);
    }
    return out;
}

PulseProgram parse_program(std::string_view text, std::string default_name) {
    std::string name = std::move(default_name);
    std::vector<Instruction> instructions;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        // "# program: <name>" header.
        {
            std::size_t i = 0;
            while (i < line.size() && space(line[i])) ++i;
            const std::string_view rest = line.substr(i);
            constexpr std::string_view kHeader = "# program:";
            if (rest.substr(0, kHeader.size()) == kHeader) {
                std::string_view n = rest.substr(kHeader.size());
                while (!n.empty() && space(n.front())) n.remove_prefix(1);
                while (!n.empty() && space(n.back())) n.remove_suffix(1);
                if (!n.empty()) name = std::string(n);
                continue;
            }
        }
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        const auto words = split_words(line, 1);
        if (words.empty()) continue;

        const std::string mnemonic = upper(words[0].text);
        const std::size_t args_col = words[0].column + words[0].text.size();
        std::vector<Piece> args;
        if (words.size() > 1) {
            std::vector<Piece> rest(words.begin() + 1, words.end());
            args = group_arguments(line, rest);
        }
        auto expect_args = [&](std::size_t n) {
            if (args.size() != n) {
                const std::size_t col = args.size() > n ? args[n].column : args_col;
                throw ParseError(ParseError::Kind::Syntax, line_no, col,
                                 mnemonic + " expects " + std::to_string(n) + " argument(s), got " +
                                     std::to_string(args.size()));
            }
        };

        if (mnemonic == "SDK") {
            expect_args(1);
            if (args[0].text == "+") {
                instructions.emplace_back(SdkInstr{KickDirection::Forward});
            } else if (args[0].text == "-") {
                instructions.emplace_back(SdkInstr{KickDirection::Backward});
            } else {
                throw ParseError(ParseError::Kind::Syntax, line_no, args[0].column,
                                 "SDK direction must be '+' or '-', got '" + std::string(args[0].text) + "'");
            }
        } else if (mnemonic == "WAIT") {
            expect_args(1);
            Expr theta = parse_expression(args[0].text, line_no, args[0].column);
            require_nonnegative(theta, "WAIT angle", line_no, args[0].column);
            instructions.emplace_back(WaitInstr{std::move(theta)});
        } else if (mnemonic == "UW") {
            expect_args(2);
            Expr phi = parse_expression(args[0].text, line_no, args[0].column);
            Expr area = parse_expression(args[1].text, line_no, args[1].column);
            require_nonnegative(area, "UW pulse area", line_no, args[1].column);
            instructions.emplace_back(UwaveInstr{std::move(phi), std::move(area)});
        } else if (mnemonic == "SETPHASE") {
            expect_args(1);
            instructions.emplace_back(SetPhaseInstr{parse_expression(args[0].text, line_no, args[0].column)});
        } else {
            throw ParseError(ParseError::Kind::UnknownMnemonic, line_no, words[0].column,
                             "unknown mnemonic '" + std::string(words[0].text) + "'");
        }
    }
    if (instructions.empty()) {
        throw ParseError(ParseError::Kind::Syntax, line_no, 1, "program contains no instructions");
    }
    return PulseProgram(std::move(name), std::move(instructions));
}

std::string format_instruction(const Instruction& instr) {
    return std::visit(Overloaded{
                          [](const SdkInstr& s) {
                              return std::string(s.direction == KickDirection::Forward ? "SDK +" : "SDK -");
                          },
                          [](const WaitInstr& w) { return "WAIT " + w.theta.format(); },
                          [](const UwaveInstr& u) { return "UW " + u.phi_mu.format() + " " + u.area.format(); },
                          [](const SetPhaseInstr& s) { return "SETPHASE " + s.phi_lambda.format(); },
                      },
                      instr);
}

std::string format_program(const PulseProgram& program) {
    std::string out = "# program: " + program.name() + "\n";
    for (const auto& instr : program.instructions()) {
        out += format_instruction(instr);
        out += '\n';
    }
    return out;
}

SpinMotionState execute(const PulseProgram& program, const SpinMotionState& initial, const ExecutionContext& ctx) {
    SpinMotionState state = initial;
    KickParams kick{ctx.eta, ctx.phi_lambda, KickDirection::Forward};
    for (const auto& instr : program.instructions()) {
        std::visit(Overloaded{
                       [&](const SdkInstr& s) {
                           kick.direction = s.direction;
                           state = apply_sdk(state, kick, ctx.tolerances);
                       },
                       [&](const WaitInstr& w) {
                           const double theta = w.theta.evaluate(ctx.bindings);
                           if (!(theta >= 0.0)) throw InvalidArgument("WAIT angle must be >= 0");
                           state = apply_evolution(state, theta, ctx.tolerances);
                       },
                       [&](const UwaveInstr& u) {
                           const RotationParams r{u.phi_mu.evaluate(ctx.bindings), u.area.evaluate(ctx.bindings)};
                           state = apply_uwave(state, r, ctx.tolerances);
                       },
                       [&](const SetPhaseInstr& s) { kick.phi_lambda = s.phi_lambda.evaluate(ctx.bindings); },
                   },
                   instr);
    }
    return state;
}

PulseProgram concat(std::string name, const PulseProgram& first, const PulseProgram& second) {
    std::vector<Instruction> all = first.instructions();
    all.insert(all.end(), second.instructions().begin(), second.instructions().end());
    return PulseProgram(std::move(name), std::move(all));
}

}  // namespace catlab
