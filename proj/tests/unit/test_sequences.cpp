#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catlab/error.hpp"
#include "catlab/observables.hpp"
#include "catlab/sequences.hpp"
#include "generators.hpp"

using namespace catlab;
using catlab::testing::for_all;
using catlab::testing::Gen;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eta = 0.2;

SpinMotionState run(const PulseProgram& p, Spin s, Bindings b = {}, double phi_lambda = 0.0) {
    ExecutionContext ctx;
    ctx.phi_lambda = phi_lambda;
    ctx.bindings = std::move(b);
    return execute(p, SpinMotionState::coherent(s, {}), ctx);
}

SpinMotionState cat2(int n, Scheme scheme) {
    const auto split = apply_uwave(SpinMotionState::coherent(Spin::Down, {}), {0.0, pi / 2});
    return execute(build_two_component(n, scheme), split, {});
}

double separation(const SpinMotionState& psi) {
    const auto labels = motional_labels(psi);
    EXPECT_EQ(labels.size(), 2u);
    return std::abs(labels[0].value() - labels[1].value());
}

bool contains_label(const std::vector<CoherentLabel>& labels, Complex a, double tol = 1e-12) {
    return std::any_of(labels.begin(), labels.end(), [&](const CoherentLabel& l) { return std::abs(l.value() - a) < tol; });
}

Bindings phases(double theta) { return Bindings{{"theta", theta}, {"phi", 0.0}, {"phi1", 0.0}, {"phi2", 0.0}, {"phi3", 0.0}}; }

}  // namespace

TEST(TwoComponent, HalfPeriodSeparation) {
    EXPECT_NEAR(separation(cat2(1, Scheme::HalfPeriod)), 0.4, 1e-14);
    EXPECT_NEAR(separation(cat2(10, Scheme::HalfPeriod)), 4.0, 1e-13);
}

TEST(TwoComponent, HalfPeriodGivesOppositeLabels) {
    for (int n : {1, 2, 5, 10}) {
        const auto psi = cat2(n, Scheme::HalfPeriod);
        ASSERT_EQ(psi.size(), 2u);
        const auto& a = psi.terms()[0];
        const auto& b = psi.terms()[1];
        EXPECT_NE(a.spin, b.spin);
        EXPECT_NEAR(std::abs(a.label.value() + b.label.value()), 0.0, 1e-13);
        EXPECT_NEAR(a.label.magnitude(), n * eta, 1e-13);
    }
}

TEST(TwoComponent, EveryPulseIncludesTrapRotation) {
    const TrapParams trap;
    const double delta = trap.phase_per_pulse();
    EXPECT_NEAR(delta, 2 * pi * 1e6 / 81.4e6, 1e-15);
    const double sep = separation(cat2(2, Scheme::EveryPulse));
    EXPECT_NEAR(sep, 2 * eta * std::abs(1.0 + std::polar(1.0, -delta)), 1e-13);
    EXPECT_NEAR(sep, 0.8, 0.8 * 2e-3);
}

TEST(TwoComponent, EveryPulseProgramShape) {
    const auto p = build_two_component(4, Scheme::EveryPulse);
    ASSERT_EQ(p.instructions().size(), 7u);
    EXPECT_EQ(std::get<SdkInstr>(p.instructions()[0]).direction, KickDirection::Forward);
    EXPECT_EQ(std::get<SdkInstr>(p.instructions()[2]).direction, KickDirection::Backward);
    EXPECT_NEAR(std::get<WaitInstr>(p.instructions()[1]).theta.evaluate(), TrapParams{}.phase_per_pulse(), 1e-15);
    EXPECT_THROW(build_two_component(0, Scheme::HalfPeriod), InvalidArgument);
}

TEST(TwoComponent, EveryPulseWarningThreshold) {
    EXPECT_FALSE(every_pulse_warning(10).has_value());
    EXPECT_TRUE(every_pulse_warning(40).has_value());
}

TEST(Reversal, ReturnsInitialStateAtFullPeriod) {
    for (int n : {1, 3, 10, 25}) {
        const auto set = build_two_component(n, Scheme::HalfPeriod);
        const auto prog = build_reversal(set);
        for (Spin s : {Spin::Up, Spin::Down}) {
            const auto in = SpinMotionState::coherent(s, {});
            ExecutionContext ctx;
            ctx.bindings.set("theta", 2 * pi);
            const auto out = execute(prog, in, ctx);
            EXPECT_GE(std::norm(inner(in, out)), 1 - 1e-9) << n;
        }
    }
}

TEST(Reversal, LabelsFollowClosedForm) {
    const int n = 5;
    const auto psi2 = cat2(n, Scheme::HalfPeriod);
    const double a = psi2.terms()[0].label.magnitude();
    const auto prog = build_reversal(build_two_component(n, Scheme::HalfPeriod));
    const auto split = apply_uwave(SpinMotionState::coherent(Spin::Down, {}), {0.0, pi / 2});
    for (double theta : {0.3, 1.0, pi, 4.0, 2 * pi - 0.1}) {
        ExecutionContext ctx;
        ctx.bindings.set("theta", theta);
        const auto out = execute(prog, split, ctx);
        ASSERT_EQ(out.size(), 2u);
        const Complex l0 = out.terms()[0].label.value();
        const Complex l1 = out.terms()[1].label.value();
        EXPECT_NEAR(std::abs(l0 + l1), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(l0), a * std::abs(std::polar(1.0, -theta) - 1.0), 1e-12);
    }
    // At theta = pi the components end twice the generated separation apart.
    ExecutionContext ctx;
    ctx.bindings.set("theta", pi);
    EXPECT_NEAR(separation(execute(prog, split, ctx)), 2 * 2 * n * eta, 1e-12);
}

TEST(Reversal, RejectsMicrowavePulses) {
    EXPECT_THROW(build_reversal(parse_program("UW 0 pi/2\nSDK +")), InvalidArgument);
}

TEST(Multicomponent, Cat34LabelCounts) {
    const auto p = preset("cat34");
    EXPECT_EQ(p.initial_spin, Spin::Down);
    EXPECT_EQ(distinct_labels(run(p.program, p.initial_spin, phases(0.0))), 3u);
    EXPECT_EQ(distinct_labels(run(p.program, p.initial_spin, phases(pi))), 3u);
    EXPECT_EQ(distinct_labels(run(p.program, p.initial_spin, phases(2 * pi))), 3u);
    for (double theta : {pi / 4, pi / 2, 1.0, 3 * pi / 2, 5.0}) {
        EXPECT_EQ(distinct_labels(run(p.program, p.initial_spin, phases(theta))), 4u) << theta;
    }
}

TEST(Multicomponent, Cat34ThreeComponentShape) {
    const auto p = preset("cat34");
    const auto labels = motional_labels(run(p.program, p.initial_spin, phases(0.0)));
    // |a> + |0> + |-a> with a = 4 i eta.
    EXPECT_TRUE(contains_label(labels, 0.0));
    EXPECT_TRUE(contains_label(labels, Complex(0, 4 * eta)));
    EXPECT_TRUE(contains_label(labels, Complex(0, -4 * eta)));
}

TEST(Multicomponent, Cat34MatchesHandExpansion) {
    // Spin-up part of the final state for initial label beta: four kets at
    //   -2i eta - e^{-i theta}(2i eta - beta),   2i eta - e^{-i theta}(2i eta - beta),
    //    2i eta - e^{-i theta}(-2i eta - beta), -2i eta - e^{-i theta}(-2i eta - beta)
    // with equal weights 2^{-3/2}.
    const auto p = preset("cat34");
    for (double theta : {0.3, pi / 2, 2.2}) {
        const Complex beta(0.2, -0.15);
        ExecutionContext ctx;
        ctx.bindings = phases(theta);
        const auto out = execute(p.program, SpinMotionState::coherent(Spin::Down, beta), ctx);
        const Complex e = std::polar(1.0, -theta);
        const Complex k(0, 2 * eta);
        const std::vector<Complex> expected{-k - e * (k - beta), k - e * (k - beta), k - e * (-k - beta),
                                            -k - e * (-k - beta)};
        std::vector<CoherentLabel> up;
        for (const auto& t : out.terms()) {
            if (t.spin != Spin::Up) continue;
            up.push_back(t.label);
            EXPECT_NEAR(std::abs(t.amp), std::pow(2.0, -1.5), 1e-13);
        }
        ASSERT_EQ(up.size(), 4u) << theta;
        for (const Complex x : expected) EXPECT_TRUE(contains_label(up, x)) << theta << " " << x;
    }
}

TEST(Multicomponent, Cat68SquareLattice) {
    const auto p = preset("cat68");
    EXPECT_EQ(p.initial_spin, Spin::Up);
    for (double theta : {0.0, pi}) {
        const auto labels = motional_labels(run(p.program, p.initial_spin, phases(theta)));
        ASSERT_EQ(labels.size(), 8u) << theta;
        for (double re : {-0.4, 0.4}) {
            for (double im : {-1.2, -0.4, 0.4, 1.2}) {
                EXPECT_TRUE(contains_label(labels, Complex(re, im))) << theta << " " << re << " " << im;
            }
        }
        for (const auto& a : labels) {
            double nearest = 1e9;
            for (const auto& b : labels) {
                if (&a != &b) nearest = std::min(nearest, std::abs(a.value() - b.value()));
            }
            EXPECT_NEAR(nearest, 0.8, 1e-9);
        }
    }
}

TEST(Multicomponent, Cat68DegenerateAngles) {
    const auto p = preset("cat68");
    for (double theta : {pi / 2, 3 * pi / 2}) {
        EXPECT_EQ(distinct_labels(run(p.program, p.initial_spin, phases(theta))), 6u) << theta;
    }
    for (double theta : {0.3, 1.0, 2.0, 4.0}) {
        EXPECT_EQ(distinct_labels(run(p.program, p.initial_spin, phases(theta))), 8u) << theta;
    }
}

TEST(Multicomponent, RejectsUnknownLevel) { EXPECT_THROW(build_multicomponent(12), InvalidArgument); }

TEST(ControlVariant, EvenPulseEqualsNoPulseUpToPhase) {
    for_all(20, 41, [](Gen& g, int i) {
        Bindings b{{"theta", g.angle()}, {"phi", g.angle()}, {"phi1", g.angle()}, {"phi2", g.angle()}};
        const auto m0 = run(build_control_variant(0), Spin::Down, b);
        const auto m2 = run(build_control_variant(2), Spin::Down, b);
        EXPECT_NEAR(std::abs(inner(m0, m2)), 1.0, 1e-12) << "case " << i;
    });
}

TEST(ControlVariant, FullRevivalForNoPulse) {
    const auto p = preset("control-m0");
    std::vector<double> thetas{2 * pi};
    ExecutionContext ctx;
    ctx.bindings = phases(0.0);
    const auto curve = contrast_scan(p.program, p.initial_spin, thetas, ThermalEnsemble(0.0), analysis_phases(8), ctx);
    EXPECT_NEAR(curve.points[0].contrast, 1.0, 1e-12);
}

TEST(Presets, EvenKickCountAndPhaseIndependence) {
    for (const auto& name : preset_names()) {
        const auto p = preset(name);
        EXPECT_EQ(p.program.sdk_count() % 2, 0u) << name;
        EXPECT_FALSE(p.program.phase_sensitive());
        for_all(10, 42, [&](Gen& g, int i) {
            Bindings b{{"theta", g.angle()}, {"phi", g.angle()}, {"phi1", g.angle()}, {"phi2", g.angle()},
                       {"phi3", g.angle()}};
            const double ref = brightness(run(p.program, p.initial_spin, b, 0.0));
            const double shifted = brightness(run(p.program, p.initial_spin, b, g.angle()));
            EXPECT_NEAR(ref, shifted, 1e-10) << name << " case " << i;
        });
    }
    EXPECT_THROW(preset("cat99"), InvalidArgument);
}

TEST(Plan, EveryPulseTimes) {
    const auto p4 = plan_schedule(4.0, Scheme::EveryPulse);
    EXPECT_EQ(p4.n_kicks, 10);
    EXPECT_NEAR(p4.wall_time, 9 / 81.4e6, 1e-18);
    EXPECT_LT(p4.growth_efficiency, 1.0);
    EXPECT_GT(p4.growth_efficiency, 0.95);
    EXPECT_FALSE(p4.warning.has_value());

    const auto p08 = plan_schedule(0.8, Scheme::EveryPulse);
    EXPECT_EQ(p08.n_kicks, 2);
    EXPECT_NEAR(p08.wall_time, 1 / 81.4e6, 1e-18);

    EXPECT_TRUE(plan_schedule(16.0, Scheme::EveryPulse).warning.has_value());
}

TEST(Plan, HalfPeriodLaw) {
    for (int n = 1; n <= 60; ++n) {
        const double target = 2 * eta * n;
        const auto p = plan_schedule(target, Scheme::HalfPeriod);
        EXPECT_EQ(p.n_kicks, n);
        EXPECT_NEAR(p.wall_time * 1e9, (target - 0.4) * 1250.0, 1e-6) << n;
        EXPECT_DOUBLE_EQ(p.growth_efficiency, 1.0);
    }
    EXPECT_NEAR(plan_schedule(20.0, Scheme::HalfPeriod).wall_time, 24.5e-6, 1e-12);
    EXPECT_EQ(plan_schedule(0.5, Scheme::HalfPeriod).n_kicks, 2);
    EXPECT_THROW(plan_schedule(0.0, Scheme::HalfPeriod), InvalidArgument);
    EXPECT_THROW(plan_schedule(-1.0, Scheme::EveryPulse), InvalidArgument);
}

TEST(Scheme, Names) {
    EXPECT_EQ(scheme_from_string("every-pulse"), Scheme::EveryPulse);
    EXPECT_EQ(scheme_from_string("half-period"), Scheme::HalfPeriod);
    EXPECT_STREQ(to_string(Scheme::HalfPeriod), "half-period");
    EXPECT_THROW(scheme_from_string("sometimes"), InvalidArgument);
}
