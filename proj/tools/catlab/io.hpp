#pragma once

// File formats: state dumps (JSON), CSV tables with a config-hash line, and
// the gnuplot matrix layout for Wigner grids.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "catlab/phase_core.hpp"
#include "catlab/wigner.hpp"
#include "json.hpp"

namespace catlab::cli {

using Json = nlohmann::ordered_json;

/// {"terms": [{"amp_re", "amp_im", "spin", "alpha_re", "alpha_im"}, ...]}
Json state_to_json(const SpinMotionState& psi);
/// Throws ConfigError on malformed input.
SpinMotionState state_from_json(const Json& j);
SpinMotionState load_state(const std::filesystem::path& path);

/// RFC 4180 table: `# config-hash: <hash>` line, header row, data rows, LF endings.
class CsvTable {
public:
    CsvTable(std::string config_hash, std::vector<std::string> header);
    void add_row(const std::vector<double>& values);
    std::string str() const;

private:
    std::string hash_;
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
};

/// Named columns from a CSV written by CsvTable (comment lines skipped).
struct CsvColumns {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
    const std::vector<double>& column(const std::string& name) const;
};
CsvColumns read_csv(const std::filesystem::path& path);

/// Grid as x, p, w rows.
CsvTable wigner_table(const WignerGrid& grid, const std::string& config_hash);
/// gnuplot `nonuniform matrix` layout: first row `N x0 x1 ...`, then `p w(x0,p) w(x1,p) ...`.
std::string wigner_gnuplot_matrix(const WignerGrid& grid, const std::string& config_hash);

std::string dump_json(const Json& j);

/// Throws ConfigError when the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace catlab::cli
