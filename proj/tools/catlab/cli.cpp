#include <cstdlib>
#include <functional>
#include <ostream>
#include <utility>

#include "CLI11.hpp"
#include "commands.hpp"

namespace catlab::cli {

namespace {

// Flag -> config key. Flag values override the config file and --set.
struct Flag {
    const char* name;
    const char* key;
    const char* help;
};

constexpr Flag kCommonFlags[] = {
    {"--program", "program", "Preset name or program file"},
    {"--theta", "theta", "Free-evolution angle (radians or pi-expression)"},
    {"--phi", "phi", "Analysis pulse phase"},
    {"--nbar", "nbar", "Mean thermal phonon number"},
    {"--eta", "eta", "Lamb-Dicke parameter"},
    {"--n-kicks", "n_kicks", "Kicks per set for two-component presets"},
    {"--phi-lambda", "phi_lambda", "Optical phase of the kicks"},
    {"--seed", "seed", "Random seed"},
    {"--threads", "threads", "Worker threads (default: CATLAB_THREADS, else 1)"},
    {"-o,--output", "output", "Output path prefix"},
    {"--quad-nodes", "quad.nodes", "Gauss-Hermite nodes per axis"},
    {"--initial-spin", "initial_spin", "up, down or auto"},
    {"--initial-state", "initial_state", "State JSON to start from"},
};

struct Subcommand {
    const char* name;
    const char* help;
    std::vector<Flag> flags;
    std::function<int(const RunConfig&, std::ostream&)> fn;
};

std::vector<Subcommand> subcommands() {
    return {
        {"simulate", "Run one program at fixed theta and dump the final state", {}, cmd_simulate},
        {"scan",
         "Contrast versus theta or trap frequency",
         {{"--variable", "scan.variable", "theta or omega"},
          {"--start", "scan.start", "First scan value (rad, or Hz for omega)"},
          {"--stop", "scan.stop", "Last scan value"},
          {"--steps", "scan.steps", "Number of scan points"},
          {"--phases", "scan.phases", "Analysis phases per point"},
          {"--wait-time", "scan.wait_time", "Omega scans: evolution time in seconds"}},
         cmd_scan},
        {"fit",
         "Fit the peak contrast of a measured or simulated curve",
         {{"--data", "fit.data", "CSV with theta_rad and contrast columns"},
          {"--model", "fit.model", "cat2, cat34 or cat68"},
          {"--alpha", "fit.alpha", "cat2 model |alpha| (default n_kicks * eta)"}},
         cmd_fit},
        {"wigner",
         "Wigner function of the final motional state",
         {{"--points", "wigner.points", "Grid points per axis"},
          {"--sector", "wigner.sector", "up, down or all"}},
         cmd_wigner},
        {"oracle-check",
         "Compare coherent-label and number-basis engines",
         {{"--n-max", "oracle.n_max", "Number-basis truncation or auto"},
          {"--samples", "oracle.samples", "Random initial states per program"},
          {"--tolerance", "oracle.tolerance", "Largest accepted deviation"}},
         cmd_oracle_check},
        {"plan",
         "Kick count and wall time for a target separation",
         {{"--target", "plan.target", "Target separation delta alpha"},
          {"--scheme", "plan.scheme", "every-pulse or half-period"}},
         cmd_plan},
    };
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spin-motion cat-state simulator"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    const auto subs = subcommands();
    std::string config_path;
    std::vector<std::string> assignments;
    std::vector<std::vector<std::string>> flag_values(subs.size());
    std::vector<CLI::App*> apps;

    for (std::size_t s = 0; s < subs.size(); ++s) {
        CLI::App* sub = app.add_subcommand(subs[s].name, subs[s].help);
        sub->add_option("-c,--config", config_path, "Config file (key = value lines)");
        sub->add_option("-s,--set", assignments, "Override a config key: key=value")->take_all();
        std::vector<Flag> flags(std::begin(kCommonFlags), std::end(kCommonFlags));
        flags.insert(flags.end(), subs[s].flags.begin(), subs[s].flags.end());
        flag_values[s].resize(flags.size());
        for (std::size_t f = 0; f < flags.size(); ++f) {
            sub->add_option(flags[f].name, flag_values[s][f], flags[f].help);
        }
        apps.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }

    try {
        std::size_t chosen = 0;
        while (!apps[chosen]->parsed()) ++chosen;

        Config overrides;
        if (!config_path.empty()) overrides = Config::load(config_path);
        for (const auto& a : assignments) overrides.set_assignment(a);
        std::vector<Flag> flags(std::begin(kCommonFlags), std::end(kCommonFlags));
        flags.insert(flags.end(), subs[chosen].flags.begin(), subs[chosen].flags.end());
        for (std::size_t f = 0; f < flags.size(); ++f) {
            std::string opt = flags[f].name;
            opt = opt.substr(opt.find_last_of(',') + 1);
            if (apps[chosen]->count(opt) > 0) overrides.set(flags[f].key, flag_values[chosen][f]);
        }
        if (!overrides.contains("threads")) {
            if (const char* env = std::getenv("CATLAB_THREADS"); env != nullptr && *env != '\0') {
                overrides.set("threads", env);
            }
        }

        const RunConfig rc = resolve(overrides, subs[chosen].name);
        return subs[chosen].fn(rc, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const InvalidArgument& e) {
        err << "invalid argument: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace catlab::cli
