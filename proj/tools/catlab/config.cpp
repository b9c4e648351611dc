#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace catlab::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool valid_key(std::string_view key) {
    if (key.empty() || key.front() == '.' || key.back() == '.') return false;
    return std::all_of(key.begin(), key.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
    });
}

class Reader {
public:
    explicit Reader(const Config& cfg) : cfg_(cfg) {}

    std::string text(std::string_view key) const { return *cfg_.get(key); }

    double number(std::string_view key) const {
        const std::string v = text(key);
        try {
            const double x = parse_expression(v, 1, 1).evaluate();
            if (!std::isfinite(x)) throw ConfigError("");
            return x;
        } catch (const Error&) {
            throw ConfigError(std::string(key) + ": expected a number or pi-expression, got '" + v + "'");
        }
    }

    double non_negative(std::string_view key) const {
        const double x = number(key);
        if (x < 0) throw ConfigError(std::string(key) + " must be >= 0");
        return x;
    }

    double positive(std::string_view key) const {
        const double x = number(key);
        if (!(x > 0)) throw ConfigError(std::string(key) + " must be > 0");
        return x;
    }

    long long integer(std::string_view key, long long lo) const {
        const double x = number(key);
        if (x != std::floor(x) || x < static_cast<double>(lo) || x > 9.0e15) {
            throw ConfigError(std::string(key) + " must be an integer >= " + std::to_string(lo));
        }
        return static_cast<long long>(x);
    }

    bool boolean(std::string_view key) const {
        const std::string v = text(key);
        if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
        if (v == "false" || v == "0" || v == "no" || v == "off") return false;
        throw ConfigError(std::string(key) + ": expected true or false, got '" + v + "'");
    }

    bool is_auto(std::string_view key) const { return text(key) == "auto"; }

private:
    const Config& cfg_;
};

std::optional<Spin> spin_setting(const std::string& v, std::string_view key, bool allow_none) {
    if (v == "up") return Spin::Up;
    if (v == "down") return Spin::Down;
    if (allow_none && (v == "auto" || v == "all")) return std::nullopt;
    throw ConfigError(std::string(key) + ": expected up or down, got '" + v + "'");
}

// Keys that do not change results.
bool excluded_from_hash(std::string_view key) { return key == "threads" || key == "output"; }

}  // namespace

Config Config::parse(std::string_view text, std::string_view origin) {
    Config cfg;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        const std::string where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
        if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        if (!valid_key(key)) throw ConfigError(where + "invalid key '" + std::string(key) + "'");
        cfg.set(std::string(key), std::string(trim(line.substr(eq + 1))));
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

void Config::set(std::string key, std::string value) { entries_[std::move(key)] = std::move(value); }

void Config::set_assignment(std::string_view assignment) {
    const std::size_t eq = assignment.find('=');
    const std::string_view key = eq == std::string_view::npos ? std::string_view{} : trim(assignment.substr(0, eq));
    if (!valid_key(key)) throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
    set(std::string(key), std::string(trim(assignment.substr(eq + 1))));
}

std::optional<std::string> Config::get(std::string_view key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void Config::merge(const Config& other) {
    for (const auto& [k, v] : other.entries_) entries_[k] = v;
}

std::uint64_t fnv1a64(std::string_view data) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

std::vector<double> ScanSettings::values() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) out.push_back(steps == 1 ? start : start + (stop - start) * i / (steps - 1));
    return out;
}

Bindings RunConfig::bindings() const {
    Bindings b = vars;
    b.set("theta", theta);
    b.set("phi", phi);
    return b;
}

const Config& default_config() {
    static const Config cfg = Config::parse(R"(
program = cat2-halfperiod
initial_spin = auto
initial_state =
n_kicks = 10
eta = 0.2
nbar = 0.15
phi_lambda = 0
theta = 2*pi
phi = 0
vars.phi1 = 0
vars.phi2 = 0
vars.phi3 = 0
trap.omega_hz = 1.0e6
trap.f_rep_hz = 81.4e6
trap.omega_hf_hz = 12.642815e9
quad.nodes = 24
quad.check = false
quad.tol = 1e-8
seed = 1
threads = 1
output =
scan.variable = theta
scan.start = 2*pi - 0.3
scan.stop = 2*pi + 0.3
scan.steps = 61
scan.phases = 8
scan.wait_time = 1e-6
fit.data =
fit.model = cat2
fit.alpha = auto
fit.n_kicks = auto
wigner.x_min = -4
wigner.x_max = 4
wigner.p_min = -4
wigner.p_max = 4
wigner.points = 161
wigner.sector = all
oracle.n_max = 80
oracle.samples = 20
oracle.tolerance = 1e-6
plan.target = 4.0
plan.scheme = every-pulse
)",
                                            "<defaults>");
    return cfg;
}

RunConfig resolve(const Config& overrides, std::string_view command) {
    for (const auto& [key, value] : overrides.entries()) {
        if (!default_config().contains(key) && key.rfind("vars.", 0) != 0) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    Config cfg = default_config();
    cfg.merge(overrides);
    const Reader r(cfg);

    RunConfig rc;
    rc.program = r.text("program");
    if (rc.program.empty()) throw ConfigError("program must not be empty");
    rc.initial_spin = spin_setting(r.text("initial_spin"), "initial_spin", true);
    rc.initial_state = r.text("initial_state");
    rc.n_kicks = static_cast<int>(r.integer("n_kicks", 1));
    rc.eta = r.positive("eta");
    rc.nbar = r.non_negative("nbar");
    rc.phi_lambda = r.number("phi_lambda");
    rc.theta = r.number("theta");
    rc.phi = r.number("phi");
    for (const auto& [key, value] : cfg.entries()) {
        if (key.rfind("vars.", 0) != 0) continue;
        const std::string name = key.substr(5);
        if (name == "theta" || name == "phi") throw ConfigError(key + ": use the top-level key '" + name + "'");
        rc.vars.set(name, r.number(key));
    }

    rc.trap.omega = 2 * std::numbers::pi * r.positive("trap.omega_hz");
    rc.trap.f_rep = r.positive("trap.f_rep_hz");
    rc.trap.omega_hf = 2 * std::numbers::pi * r.positive("trap.omega_hf_hz");

    rc.quad.nodes = static_cast<int>(r.integer("quad.nodes", 1));
    rc.quad.check_convergence = r.boolean("quad.check");
    rc.quad.tol = r.positive("quad.tol");

    rc.seed = static_cast<std::uint64_t>(r.integer("seed", 0));
    rc.threads = static_cast<unsigned>(r.integer("threads", 1));
    rc.output = r.text("output");

    rc.scan.variable = r.text("scan.variable");
    if (rc.scan.variable != "theta" && rc.scan.variable != "omega") {
        throw ConfigError("scan.variable must be theta or omega");
    }
    rc.scan.start = r.number("scan.start");
    rc.scan.stop = r.number("scan.stop");
    rc.scan.steps = static_cast<int>(r.integer("scan.steps", 1));
    rc.scan.phases = static_cast<int>(r.integer("scan.phases", 4));
    rc.scan.wait_time = r.positive("scan.wait_time");

    rc.fit.data = r.text("fit.data");
    try {
        rc.fit.model = contrast_model_from_string(r.text("fit.model"));
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("fit.model: ") + e.what());
    }
    rc.fit.n_kicks = r.is_auto("fit.n_kicks") ? rc.n_kicks : static_cast<int>(r.integer("fit.n_kicks", 1));
    // Two-component cat: |alpha| is half the separation 2 N eta.
    rc.fit.alpha = r.is_auto("fit.alpha") ? rc.fit.n_kicks * rc.eta : r.positive("fit.alpha");

    const int points = static_cast<int>(r.integer("wigner.points", 2));
    rc.wigner.x = {r.number("wigner.x_min"), r.number("wigner.x_max"), points};
    rc.wigner.p = {r.number("wigner.p_min"), r.number("wigner.p_max"), points};
    if (!(rc.wigner.x.max > rc.wigner.x.min) || !(rc.wigner.p.max > rc.wigner.p.min)) {
        throw ConfigError("wigner ranges must satisfy min < max");
    }
    rc.wigner.sector = spin_setting(r.text("wigner.sector"), "wigner.sector", true);

    rc.oracle.n_max = r.is_auto("oracle.n_max") ? 0 : static_cast<int>(r.integer("oracle.n_max", 1));
    rc.oracle.samples = static_cast<int>(r.integer("oracle.samples", 1));
    rc.oracle.tolerance = r.positive("oracle.tolerance");

    rc.plan.target = r.positive("plan.target");
    try {
        rc.plan.scheme = scheme_from_string(r.text("plan.scheme"));
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("plan.scheme: ") + e.what());
    }

    std::string canonical = "command = " + std::string(command) + "\n";
    for (const auto& [key, value] : cfg.entries()) {
        if (!excluded_from_hash(key)) canonical += key + " = " + value + "\n";
    }
    rc.hash = hex64(fnv1a64(canonical));
    return rc;
}

}  // namespace catlab::cli
