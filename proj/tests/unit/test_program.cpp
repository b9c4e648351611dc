#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "catlab/error.hpp"
#include "catlab/program.hpp"
#include "catlab/sequences.hpp"
#include "generators.hpp"

using namespace catlab;
using catlab::testing::for_all;
using catlab::testing::Gen;

namespace {

constexpr double pi = std::numbers::pi;

ParseError parse_failure(std::string_view text) {
    try {
        parse_program(text);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no parse error for: " << text;
    return ParseError(ParseError::Kind::Syntax, 0, 0, "");
}

// Random expression text over numbers, pi, a few variables and + - * / ( ).
std::string random_expr(Gen& g, int depth) {
    if (depth == 0 || g.integer(0, 3) == 0) {
        switch (g.integer(0, 3)) {
            case 0: return std::to_string(g.integer(0, 99));
            case 1: return "pi";
            case 2: return g.coin() ? "theta" : "phi2";
            default: return format_number(g.uniform(0, 10));
        }
    }
    static constexpr char ops[] = "+-*/";
    const std::string lhs = random_expr(g, depth - 1);
    const std::string rhs = random_expr(g, depth - 1);
    const char op = ops[g.integer(0, 3)];
    switch (g.integer(0, 2)) {
        case 0: return lhs + op + rhs;
        case 1: return "(" + lhs + " " + op + " " + rhs + ")";
        default: return "-" + lhs;
    }
}

}  // namespace

TEST(Expression, Evaluates) {
    EXPECT_DOUBLE_EQ(Expr::parse("2*pi").evaluate(), 2 * pi);
    EXPECT_DOUBLE_EQ(Expr::parse("pi/2").evaluate(), pi / 2);
    EXPECT_DOUBLE_EQ(Expr::parse("-3 + 4*2").evaluate(), 5.0);
    EXPECT_DOUBLE_EQ(Expr::parse("(1+2)*3").evaluate(), 9.0);
    EXPECT_DOUBLE_EQ(Expr::parse("1-2-3").evaluate(), -4.0);
    EXPECT_DOUBLE_EQ(Expr::parse("8/2/2").evaluate(), 2.0);
    EXPECT_DOUBLE_EQ(Expr::parse("PI").evaluate(), pi);
    EXPECT_DOUBLE_EQ(Expr::parse("1e-3").evaluate(), 1e-3);
    EXPECT_DOUBLE_EQ(Expr::parse("theta + 1").evaluate(Bindings{{"theta", 2.0}}), 3.0);
}

TEST(Expression, Errors) {
    auto kind_of = [](std::string_view text) {
        try {
            Expr::parse(text);
        } catch (const ParseError& e) {
            return e.kind();
        }
        return ParseError::Kind::UnboundVariable;
    };
    EXPECT_EQ(kind_of("1.2.3"), ParseError::Kind::MalformedNumber);
    EXPECT_EQ(kind_of("3x"), ParseError::Kind::MalformedNumber);
    EXPECT_EQ(kind_of("(1+2"), ParseError::Kind::Syntax);
    EXPECT_EQ(kind_of("1+"), ParseError::Kind::Syntax);
    EXPECT_EQ(kind_of(""), ParseError::Kind::Syntax);
    try {
        Expr::parse("theta").evaluate();
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.kind(), ParseError::Kind::UnboundVariable);
    }
}

TEST(Expression, FormatRoundTrips) {
    for_all(500, 31, [](Gen& g, int i) {
        const Expr e = Expr::parse(random_expr(g, 4));
        const Expr back = Expr::parse(e.format());
        EXPECT_TRUE(back == e) << "case " << i << ": " << e.format();
        const Bindings b{{"theta", 1.25}, {"phi2", -0.5}};
        const double x = e.evaluate(b);
        if (std::isfinite(x)) EXPECT_EQ(back.evaluate(b), x);
    });
}

TEST(Expression, Variables) {
    const Expr e = Expr::parse("phi1 + 2*theta - phi1");
    EXPECT_EQ(e.variables(), (std::vector<std::string>{"phi1", "theta"}));
    EXPECT_FALSE(e.is_constant());
    EXPECT_TRUE(Expr::parse("2*pi").is_constant());
}

TEST(Parser, BasicProgram) {
    const auto p = parse_program("SDK +\nWAIT pi\nSDK +");
    ASSERT_EQ(p.instructions().size(), 3u);
    EXPECT_EQ(p.sdk_count(), 2u);
    EXPECT_FALSE(p.phase_sensitive());
    EXPECT_DOUBLE_EQ(std::get<WaitInstr>(p.instructions()[1]).theta.evaluate(), pi);
}

TEST(Parser, ExpressionArguments) {
    const auto p = parse_program("WAIT 2*pi\nwait 2 * pi\nUW phi1 pi/2\nuw (phi + 1) 3*pi / 2\nSETPHASE -0.3");
    ASSERT_EQ(p.instructions().size(), 5u);
    EXPECT_DOUBLE_EQ(std::get<WaitInstr>(p.instructions()[0]).theta.evaluate(), 2 * pi);
    EXPECT_DOUBLE_EQ(std::get<WaitInstr>(p.instructions()[1]).theta.evaluate(), 2 * pi);
    const auto& uw = std::get<UwaveInstr>(p.instructions()[3]);
    EXPECT_DOUBLE_EQ(uw.phi_mu.evaluate(Bindings{{"phi", 1.0}}), 2.0);
    EXPECT_DOUBLE_EQ(uw.area.evaluate(), 1.5 * pi);
    EXPECT_DOUBLE_EQ(std::get<SetPhaseInstr>(p.instructions()[4]).phi_lambda.evaluate(), -0.3);
    EXPECT_EQ(p.variables(), (std::vector<std::string>{"phi1", "phi"}));
}

TEST(Parser, CommentsHeaderAndBlankLines) {
    const auto p = parse_program("# program: demo\n\n  # note\nSDK -   # kick back\n");
    EXPECT_EQ(p.name(), "demo");
    ASSERT_EQ(p.instructions().size(), 1u);
    EXPECT_EQ(std::get<SdkInstr>(p.instructions()[0]).direction, KickDirection::Backward);
    EXPECT_TRUE(p.phase_sensitive());
}

TEST(Parser, ErrorLocations) {
    const auto bad_sdk = parse_failure("SDK ?");
    EXPECT_EQ(bad_sdk.kind(), ParseError::Kind::Syntax);
    EXPECT_EQ(bad_sdk.line(), 1u);
    EXPECT_EQ(bad_sdk.column(), 5u);

    const auto unknown = parse_failure("SDK +\n  JUMP 3");
    EXPECT_EQ(unknown.kind(), ParseError::Kind::UnknownMnemonic);
    EXPECT_EQ(unknown.line(), 2u);
    EXPECT_EQ(unknown.column(), 3u);

    const auto number = parse_failure("WAIT 1.2.3");
    EXPECT_EQ(number.kind(), ParseError::Kind::MalformedNumber);
    EXPECT_EQ(number.column(), 6u);

    EXPECT_EQ(parse_failure("UW 0").kind(), ParseError::Kind::Syntax);
    EXPECT_EQ(parse_failure("SDK + +").kind(), ParseError::Kind::Syntax);
    EXPECT_EQ(parse_failure("WAIT -1").kind(), ParseError::Kind::Syntax);
    EXPECT_EQ(parse_failure("# only a comment").kind(), ParseError::Kind::Syntax);
}

TEST(Parser, FormatRoundTripsPresets) {
    for (const auto& name : preset_names()) {
        const auto p = preset(name).program;
        EXPECT_EQ(parse_program(format_program(p)), p) << name;
    }
    for (auto scheme : {Scheme::EveryPulse, Scheme::HalfPeriod}) {
        const auto p = build_two_component(7, scheme);
        EXPECT_EQ(parse_program(format_program(p)), p);
    }
}

TEST(Parser, FormatRoundTripsRandomPrograms) {
    for_all(200, 32, [](Gen& g, int i) {
        std::string text;
        const int n = g.integer(1, 12);
        for (int k = 0; k < n; ++k) {
            switch (g.integer(0, 3)) {
                case 0: text += g.coin() ? "SDK +\n" : "sdk -\n"; break;
                case 1: text += "WAIT " + random_expr(g, 3) + "\n"; break;
                case 2: text += "UW " + random_expr(g, 2) + " " + random_expr(g, 2) + "\n"; break;
                default: text += "SetPhase " + random_expr(g, 2) + "\n"; break;
            }
        }
        try {
            const auto p = parse_program(text);
            EXPECT_EQ(parse_program(format_program(p)), p) << "case " << i << "\n" << text;
        } catch (const ParseError& e) {
            // Only a constant negative WAIT or UW area may be rejected.
            EXPECT_NE(std::string(e.message()).find(">= 0"), std::string::npos) << text;
        }
    });
}

TEST(Program, RejectsEmptyAndNegativeConstants) {
    EXPECT_THROW(PulseProgram("x", {}), InvalidArgument);
    EXPECT_THROW(PulseProgram("x", {WaitInstr{Expr(-1.0)}}), InvalidArgument);
    EXPECT_THROW(PulseProgram("x", {UwaveInstr{Expr(0.0), Expr(-1.0)}}), InvalidArgument);
}

TEST(Program, ExecuteMatchesOperators) {
    const auto p = parse_program("UW 0 pi/2\nSDK +\nWAIT theta\nSETPHASE 0.7\nSDK -");
    ExecutionContext ctx;
    ctx.phi_lambda = 0.2;
    ctx.bindings.set("theta", 1.1);
    auto expected = apply_uwave(SpinMotionState::coherent(Spin::Down, {}), {0.0, pi / 2});
    expected = apply_sdk(expected, {0.2, 0.2, KickDirection::Forward});
    expected = apply_evolution(expected, 1.1);
    expected = apply_sdk(expected, {0.2, 0.7, KickDirection::Backward});
    EXPECT_EQ(execute(p, SpinMotionState::coherent(Spin::Down, {}), ctx), expected);

    ctx.bindings.set("theta", -1.0);
    EXPECT_THROW(execute(p, SpinMotionState::coherent(Spin::Down, {}), ctx), InvalidArgument);
    EXPECT_THROW(execute(p, SpinMotionState::coherent(Spin::Down, {}), ExecutionContext{}), ParseError);
}

TEST(Program, Concat) {
    const auto a = parse_program("SDK +");
    const auto b = parse_program("WAIT 1\nSDK -");
    const auto c = concat("ab", a, b);
    EXPECT_EQ(c.name(), "ab");
    EXPECT_EQ(c.instructions().size(), 3u);
    EXPECT_EQ(c.sdk_count(), 2u);
}
