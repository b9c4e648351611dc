#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "catlab/fock_oracle.hpp"
#include "catlab/observables.hpp"
#include "catlab/parallel.hpp"
#include "catlab/wigner.hpp"
#include "io.hpp"

namespace catlab::cli {

namespace {

std::string output_path(const RunConfig& rc, const std::string& suffix) { return rc.output + suffix; }

ExecutionContext context(const RunConfig& rc) {
    ExecutionContext ctx;
    ctx.eta = rc.eta;
    ctx.phi_lambda = rc.phi_lambda;
    ctx.bindings = rc.bindings();
    return ctx;
}

SpinMotionState initial_state(const RunConfig& rc, const Preset& p) {
    if (!rc.initial_state.empty()) return load_state(rc.initial_state);
    return SpinMotionState::coherent(p.initial_spin, CoherentLabel{});
}

Json nullable(double v, bool present) { return present ? Json(v) : Json(nullptr); }

}  // namespace

Preset resolve_program(const RunConfig& rc, const std::string& name) {
    const auto& names = preset_names();
    Preset p = [&] {
        if (std::find(names.begin(), names.end(), name) != names.end()) {
            return preset(name, PresetOptions{rc.n_kicks, rc.trap});
        }
        std::ifstream in(name, std::ios::binary);
        if (!in) throw ConfigError("'" + name + "' is neither a preset nor a readable program file");
        std::ostringstream ss;
        ss << in.rdbuf();
        return Preset{parse_program(ss.str(), std::filesystem::path(name).stem().string()), Spin::Down};
    }();
    if (rc.initial_spin) p.initial_spin = *rc.initial_spin;
    return p;
}

int cmd_simulate(const RunConfig& rc, std::ostream& out) {
    const Preset p = resolve_program(rc, rc.program);
    const ExecutionContext ctx = context(rc);
    const SpinMotionState psi = execute(p.program, initial_state(rc, p), ctx);

    Json summary;
    summary["config_hash"] = rc.hash;
    summary["program"] = p.program.name();
    summary["theta"] = rc.theta;
    summary["phi"] = rc.phi;
    summary["brightness"] = brightness(psi);
    if (rc.nbar > 0 && rc.initial_state.empty()) {
        const ThermalResult t = thermal_brightness(p.program, p.initial_spin, ThermalEnsemble(rc.nbar), ctx, rc.quad);
        summary["thermal"] = Json{{"nbar", rc.nbar}, {"brightness", t.value}, {"converged", t.converged}};
    }
    summary["n_terms"] = psi.size();
    summary["distinct_labels"] = distinct_labels(psi);
    summary["state"] = state_to_json(psi);

    if (!rc.output.empty()) {
        write_file(output_path(rc, "_state.json"), dump_json(state_to_json(psi)));
        write_file(output_path(rc, "_simulate.json"), dump_json(summary));
    }
    out << dump_json(summary);
    return kSuccess;
}

int cmd_scan(const RunConfig& rc, std::ostream& out) {
    const std::vector<double> values = rc.scan.values();
    const std::vector<double> phases = analysis_phases(rc.scan.phases);
    const ThermalEnsemble ens(rc.nbar);
    ScanOptions opts;
    opts.quad = rc.quad;
    opts.threads = rc.threads;

    const bool by_omega = rc.scan.variable == "omega";
    std::vector<ContrastPoint> points(values.size());
    if (by_omega) {
        // The programs depend on omega through the every-pulse spacing, so each
        // point is its own scan; points run in parallel, each single-threaded.
        opts.threads = 1;
        parallel_for(values.size(), rc.threads, [&](std::size_t i) {
            RunConfig local = rc;
            local.trap.omega = 2 * std::numbers::pi * values[i];
            const Preset p = resolve_program(local, local.program);
            const double theta = local.trap.omega * rc.scan.wait_time;
            const std::vector<double> thetas{theta};
            points[i] = contrast_scan(p.program, p.initial_spin, thetas, ens, phases, context(local), opts).points[0];
        });
    } else {
        const Preset p = resolve_program(rc, rc.program);
        points = contrast_scan(p.program, p.initial_spin, values, ens, phases, context(rc), opts).points;
    }

    CsvTable table(rc.hash, by_omega ? std::vector<std::string>{"omega_hz", "theta_rad", "contrast", "contrast_err"}
                                     : std::vector<std::string>{"theta_rad", "contrast", "contrast_err"});
    Json jpoints = Json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        if (by_omega) {
            table.add_row({values[i], pt.theta, pt.contrast, pt.contrast_err});
        } else {
            table.add_row({pt.theta, pt.contrast, pt.contrast_err});
        }
        Json jp;
        if (by_omega) jp["omega_hz"] = values[i];
        jp["theta_rad"] = pt.theta;
        jp["contrast"] = pt.contrast;
        jp["contrast_err"] = pt.contrast_err;
        jp["degenerate"] = pt.degenerate;
        jpoints.push_back(std::move(jp));
    }
    const Json curve{{"config_hash", rc.hash},
                     {"program", rc.program},
                     {"variable", rc.scan.variable},
                     {"nbar", rc.nbar},
                     {"points", std::move(jpoints)}};

    if (rc.output.empty()) {
        out << table.str();
    } else {
        write_file(output_path(rc, "_scan.csv"), table.str());
        write_file(output_path(rc, "_scan.json"), dump_json(curve));
        out << dump_json(Json{{"config_hash", rc.hash},
                              {"points", points.size()},
                              {"csv", output_path(rc, "_scan.csv")},
                              {"json", output_path(rc, "_scan.json")}});
    }
    return kSuccess;
}

int cmd_fit(const RunConfig& rc, std::ostream& out) {
    if (rc.fit.data.empty()) throw ConfigError("fit.data (--data) is required");
    const CsvColumns data = read_csv(rc.fit.data);
    const auto& theta = data.column("theta_rad");
    const auto& contrast = data.column("contrast");
    if (theta.empty()) throw ConfigError("data file '" + rc.fit.data + "' has no rows");

    ContrastCurve curve;
    curve.model = rc.fit.model;
    for (std::size_t i = 0; i < theta.size(); ++i) curve.points.push_back({theta[i], contrast[i], 0.0, false});

    ContrastModel model;
    model.kind = rc.fit.model;
    model.alpha = rc.fit.alpha;
    model.nbar = rc.nbar;
    model.eta = rc.eta;
    model.threads = rc.threads;
    const PeakFit fit = fit_peak_contrast(curve, model);

    const bool positive = fit.c0 > 0;
    Json j;
    j["config_hash"] = rc.hash;
    j["model"] = to_string(rc.fit.model);
    if (rc.fit.model == ContrastModelKind::Cat2) j["alpha"] = rc.fit.alpha;
    j["nbar"] = rc.nbar;
    j["n_points"] = theta.size();
    j["c0"] = fit.c0;
    j["std_error"] = fit.std_error;
    j["residual_rms"] = fit.residual_rms;
    j["fidelity"] = nullable(positive ? fidelity_from_contrast(fit.c0) : 0.0, positive);
    j["n_kicks_per_set"] = rc.fit.n_kicks;
    j["sdk_fidelity"] = nullable(positive ? sdk_fidelity_estimate(fit.c0, rc.fit.n_kicks) : 0.0, positive);
    if (!rc.output.empty()) write_file(output_path(rc, "_fit.json"), dump_json(j));
    out << dump_json(j);
    return kSuccess;
}

int cmd_wigner(const RunConfig& rc, std::ostream& out) {
    const Preset p = resolve_program(rc, rc.program);
    const SpinMotionState psi = execute(p.program, initial_state(rc, p), context(rc));
    const WignerGrid grid = wigner(psi, rc.wigner.x, rc.wigner.p, rc.wigner.sector, rc.threads);
    const CsvTable table = wigner_table(grid, rc.hash);
    if (rc.output.empty()) {
        out << table.str();
        return kSuccess;
    }
    write_file(output_path(rc, "_wigner.csv"), table.str());
    write_file(output_path(rc, "_wigner.dat"), wigner_gnuplot_matrix(grid, rc.hash));
    out << dump_json(Json{{"config_hash", rc.hash},
                          {"program", p.program.name()},
                          {"sector", rc.wigner.sector ? to_string(*rc.wigner.sector) : "all"},
                          {"integral", grid.integral()},
                          {"min_value", grid.min_value()},
                          {"csv", output_path(rc, "_wigner.csv")},
                          {"matrix", output_path(rc, "_wigner.dat")}});
    return kSuccess;
}

int cmd_oracle_check(const RunConfig& rc, std::ostream& out) {
    const std::vector<std::string> names =
        rc.program == "all" ? preset_names() : std::vector<std::string>{rc.program};

    struct Sample {
        Complex beta;
        double phi_lambda;
        Bindings bindings;
    };

    std::mt19937_64 rng(rc.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr double kRadius = 3.0;
    constexpr double two_pi = 2 * std::numbers::pi;

    bool all_passed = true;
    Json results = Json::array();
    for (const auto& name : names) {
        const Preset p = resolve_program(rc, name);
        std::vector<Sample> samples;
        for (int s = 0; s < rc.oracle.samples; ++s) {
            Sample smp;
            const double r = kRadius * std::sqrt(unit(rng));
            smp.beta = std::polar(r, two_pi * unit(rng));
            smp.phi_lambda = two_pi * unit(rng);
            smp.bindings = rc.bindings();
            for (const auto& v : p.program.variables()) smp.bindings.set(v, two_pi * unit(rng));
            samples.push_back(std::move(smp));
        }

        std::vector<double> deviation(samples.size());
        std::vector<double> drift(samples.size());
        std::vector<double> leaked(samples.size());
        std::vector<int> truncation(samples.size());
        parallel_for(samples.size(), rc.threads, [&](std::size_t i) {
            ExecutionContext ctx;
            ctx.eta = rc.eta;
            ctx.phi_lambda = samples[i].phi_lambda;
            ctx.bindings = samples[i].bindings;
            const SpinMotionState init = SpinMotionState::coherent(p.initial_spin, CoherentLabel(samples[i].beta));
            const int n_max = rc.oracle.n_max > 0 ? rc.oracle.n_max : fock::auto_n_max(p.program, init, rc.eta);
            const auto [encoded, report] = fock::encode(init, n_max);
            const fock::OracleRun run = fock::oracle_run(p.program, encoded, ctx);
            deviation[i] = std::abs(brightness(execute(p.program, init, ctx)) - fock::brightness(run.state));
            drift[i] = run.norm_drift;
            leaked[i] = report.leaked_norm;
            truncation[i] = n_max;
        });

        auto max_of = [](const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); };
        const double max_dev = max_of(deviation);
        const double max_drift = max_of(drift);
        const bool passed = max_dev <= rc.oracle.tolerance && max_drift <= rc.oracle.tolerance;
        all_passed = all_passed && passed;
        results.push_back(Json{{"program", name},
                               {"n_max", truncation.empty() ? 0 : *std::max_element(truncation.begin(), truncation.end())},
                               {"max_brightness_deviation", max_dev},
                               {"max_norm_drift", max_drift},
                               {"max_leaked_norm", max_of(leaked)},
                               {"passed", passed}});
    }

    const Json j{{"config_hash", rc.hash},
                 {"samples", rc.oracle.samples},
                 {"seed", rc.seed},
                 {"tolerance", rc.oracle.tolerance},
                 {"results", std::move(results)},
                 {"passed", all_passed}};
    if (!rc.output.empty()) write_file(output_path(rc, "_oracle.json"), dump_json(j));
    out << dump_json(j);
    return all_passed ? kSuccess : kVerificationFailure;
}

int cmd_plan(const RunConfig& rc, std::ostream& out) {
    const SchedulePlan plan = plan_schedule(rc.plan.target, rc.plan.scheme, rc.trap, rc.eta);
    const Json j{{"config_hash", rc.hash},
                 {"target_delta_alpha", rc.plan.target},
                 {"scheme", to_string(plan.scheme)},
                 {"eta", rc.eta},
                 {"n_kicks", plan.n_kicks},
                 {"delta_alpha", plan.delta_alpha},
                 {"growth_efficiency", plan.growth_efficiency},
                 {"wall_time_s", plan.wall_time},
                 {"wall_time_ns", plan.wall_time * 1e9},
                 {"pulses_per_period", rc.trap.pulses_per_period()},
                 {"warning", plan.warning ? Json(*plan.warning) : Json(nullptr)}};
    if (!rc.output.empty()) write_file(output_path(rc, "_plan.json"), dump_json(j));
    out << dump_json(j);
    return kSuccess;
}

}  // namespace catlab::cli
