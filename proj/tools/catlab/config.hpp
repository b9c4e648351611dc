#pragma once

// Run configuration: a flat `key = value` text file (dotted keys group related
// settings), merged with command-line overrides, then resolved into typed values.
// Numeric values are expressions, so `2*pi` and `pi/2` work everywhere.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catlab/error.hpp"
#include "catlab/expression.hpp"
#include "catlab/observables.hpp"
#include "catlab/operators.hpp"
#include "catlab/sequences.hpp"
#include "catlab/wigner.hpp"

namespace catlab::cli {

/// Bad key, bad value or unreadable file. Maps to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Raw key/value store with sorted iteration.
class Config {
public:
    /// Throws ConfigError on a line without '=' or with an empty key.
    static Config parse(std::string_view text, std::string_view origin = "<config>");
    static Config load(const std::filesystem::path& path);

    void set(std::string key, std::string value);
    /// "key=value"; throws ConfigError otherwise.
    void set_assignment(std::string_view assignment);
    std::optional<std::string> get(std::string_view key) const;
    bool contains(std::string_view key) const { return get(key).has_value(); }

    /// Entries of `other` win.
    void merge(const Config& other);

    const std::map<std::string, std::string, std::less<>>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, std::string, std::less<>> entries_;
};

std::uint64_t fnv1a64(std::string_view data) noexcept;
/// 16 lowercase hex digits.
std::string hex64(std::uint64_t value);

struct ScanSettings {
    std::string variable = "theta";  // theta | omega
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;
    int phases = 8;
    double wait_time = 1e-6;  // omega scans: theta = omega * wait_time [s]

    std::vector<double> values() const;
};

struct FitSettings {
    std::string data;
    ContrastModelKind model = ContrastModelKind::Cat2;
    double alpha = 2.0;
    int n_kicks = 10;
};

struct WignerSettings {
    GridAxis x{-4.0, 4.0, 161};
    GridAxis p{-4.0, 4.0, 161};
    std::optional<Spin> sector;
};

struct OracleSettings {
    int n_max = 80;  // 0 picks a truncation from the program
    int samples = 20;
    double tolerance = 1e-6;
};

struct PlanSettings {
    double target = 4.0;
    Scheme scheme = Scheme::EveryPulse;
};

struct RunConfig {
    std::string program = "cat2-halfperiod";  // preset name or program file
    std::optional<Spin> initial_spin;         // default: the preset's, Down for files
    std::string initial_state;                // state JSON replacing |s>|0>
    int n_kicks = 10;
    double eta = 0.2;
    double nbar = 0.15;
    double phi_lambda = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    Bindings vars;  // phi1..phi3 and any vars.<name>
    TrapParams trap{};
    QuadratureSpec quad{};
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string output;
    ScanSettings scan{};
    FitSettings fit{};
    WignerSettings wigner{};
    OracleSettings oracle{};
    PlanSettings plan{};

    /// FNV-1a of the effective settings, excluding threads and output paths.
    std::string hash;

    /// Bindings for program execution: vars plus theta and phi.
    Bindings bindings() const;
};

/// Every recognised key with its default value. `vars.<name>` keys are also accepted.
const Config& default_config();

/// Merges `overrides` over the defaults, validates every key and value and
/// computes the hash. `command` is folded into the hash.
RunConfig resolve(const Config& overrides, std::string_view command);

}  // namespace catlab::cli
