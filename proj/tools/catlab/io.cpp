#include "io.hpp"

#include <fstream>
#include <sstream>

#include "catlab/expression.hpp"
#include "config.hpp"

namespace catlab::cli {

Json state_to_json(const SpinMotionState& psi) {
    Json terms = Json::array();
    for (const auto& t : psi.terms()) {
        terms.push_back(Json{{"amp_re", t.amp.real()},
                             {"amp_im", t.amp.imag()},
                             {"spin", to_string(t.spin)},
                             {"alpha_re", t.label.re()},
                             {"alpha_im", t.label.im()}});
    }
    return Json{{"terms", std::move(terms)}};
}

SpinMotionState state_from_json(const Json& j) {
    try {
        std::vector<CoherentTerm> terms;
        for (const auto& t : j.at("terms")) {
            const std::string spin = t.at("spin").get<std::string>();
            if (spin != "up" && spin != "down") throw ConfigError("state spin must be up or down");
            terms.push_back({Complex(t.at("amp_re").get<double>(), t.at("amp_im").get<double>()),
                             spin == "up" ? Spin::Up : Spin::Down,
                             CoherentLabel(t.at("alpha_re").get<double>(), t.at("alpha_im").get<double>())});
        }
        return SpinMotionState(std::move(terms));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed state JSON: ") + e.what());
    }
}

SpinMotionState load_state(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read state file '" + path.string() + "'");
    try {
        return state_from_json(Json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed state JSON in '" + path.string() + "': " + e.what());
    }
}

CsvTable::CsvTable(std::string config_hash, std::vector<std::string> header)
    : hash_(std::move(config_hash)), header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<double>& values) {
    if (values.size() != header_.size()) throw InvalidArgument("CSV row width does not match header");
    rows_.push_back(values);
}

std::string CsvTable::str() const {
    std::string out = "# config-hash: " + hash_ + "\n";
    for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
        out += '\n';
    }
    return out;
}

const std::vector<double>& CsvColumns::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return columns[i];
    }
    throw ConfigError("CSV has no column '" + name + "'");
}

CsvColumns read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read data file '" + path.string() + "'");
    CsvColumns out;
    std::string line;
    std::size_t line_no = 0;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            if (!cell.empty() && cell.back() == '\r') cell.pop_back();
            cells.push_back(cell);
        }
        return cells;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto cells = split(line);
        if (out.header.empty()) {
            out.header = std::move(cells);
            out.columns.resize(out.header.size());
            continue;
        }
        if (cells.size() != out.header.size()) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": wrong number of fields");
        }
        for (std::size_t i = 0; i < cells.size(); ++i) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cells[i], &used);
                if (used != cells[i].size()) throw std::invalid_argument("trailing characters");
                out.columns[i].push_back(v);
            } catch (const std::exception&) {
                throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + cells[i] + "'");
            }
        }
    }
    if (out.header.empty()) throw ConfigError("data file '" + path.string() + "' has no header");
    return out;
}

CsvTable wigner_table(const WignerGrid& grid, const std::string& config_hash) {
    CsvTable t(config_hash, {"x", "p", "w"});
    for (int ip = 0; ip < grid.p.points; ++ip) {
        for (int ix = 0; ix < grid.x.points; ++ix) t.add_row({grid.x.at(ix), grid.p.at(ip), grid.at(ix, ip)});
    }
    return t;
}

std::string wigner_gnuplot_matrix(const WignerGrid& grid, const std::string& config_hash) {
    std::string out = "# config-hash: " + config_hash + "\n";
    out += "# plot 'file' nonuniform matrix with image\n";
    out += std::to_string(grid.x.points);
    for (int ix = 0; ix < grid.x.points; ++ix) out += " " + format_number(grid.x.at(ix));
    out += '\n';
    for (int ip = 0; ip < grid.p.points; ++ip) {
        out += format_number(grid.p.at(ip));
        for (int ix = 0; ix < grid.x.points; ++ix) out += " " + format_number(grid.at(ix, ip));
        out += '\n';
    }
    return out;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

}  // namespace catlab::cli
