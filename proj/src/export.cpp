#include "cfp/export.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace cfp {

#ifndef CFP_VERSION
#define CFP_VERSION "0.0.0"
#endif

const char* software_version() { return CFP_VERSION; }

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

std::string to_csv(const CsvTable& t) {
    std::string out;
    for (const auto& m : t.meta) out += "# " + m + "\n";
    for (std::size_t j = 0; j < t.columns.size(); ++j) out += (j ? "," : "") + t.columns[j];
    out += "\n";
    for (const auto& r : t.rows) {
        if (r.size() != t.columns.size()) throw std::logic_error("to_csv: row width mismatch");
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j) out += ',';
            out += format_double(r[j]);
        }
        out += "\n";
    }
    return out;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.meta.push_back(trim(line.substr(1)));
            continue;
        }
        auto cells = split(line, ',');
        if (!header) {
            t.columns = cells;
            header = true;
            continue;
        }
        if (cells.size() != t.columns.size()) throw std::runtime_error("parse_csv: ragged row");
        std::vector<double> r;
        for (const auto& c : cells) r.push_back(std::stod(c));
        t.rows.push_back(std::move(r));
    }
    return t;
}

static std::vector<double> solution_row(const GridFunction& f, const Coupling& c, std::size_t i) {
    double b = f.nodes[i], l1 = std::log1p(b);
    return {b, f.values[i], std::exp(f.values[i]), std::exp(-(1.0 - c.abs) * l1), std::exp(-(1.0 - c.lambda_r) * l1)};
}

CsvTable solution_table(const GridFunction& f, const Coupling& c) {
    CsvTable t;
    t.meta = {fmt::format("lambda = {}", format_double(c.lambda)), fmt::format("lambda2 = {}", format_double(f.cutoff())),
              fmt::format("nodes = {}", f.size())};
    t.columns = {"b", "f", "exp_f", "lower", "upper"};
    for (std::size_t i = 0; i < f.size(); ++i) t.rows.push_back(solution_row(f, c, i));
    return t;
}

const std::vector<std::pair<double, double>>& figure2_windows() {
    static const std::vector<std::pair<double, double>> w{{0.0, 1.0}, {1.0, 1e2}, {1e2, 1e4}, {1e4, 1e6}};
    return w;
}

CsvTable figure2_table(const GridFunction& f, const Coupling& c) {
    CsvTable t;
    t.meta = {fmt::format("lambda = {}", format_double(c.lambda)), fmt::format("lambda2 = {}", format_double(f.cutoff())),
              "windows: 1=[0,1] 2=[1,1e2] 3=[1e2,1e4] 4=[1e4,1e6]"};
    t.columns = {"window", "b", "G0b", "lower", "upper"};
    const auto& w = figure2_windows();
    for (std::size_t k = 0; k < w.size(); ++k) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            double b = f.nodes[i];
            if (b < w[k].first || b > w[k].second) continue;
            auto r = solution_row(f, c, i);
            t.rows.push_back({double(k + 1), b, r[2], r[3], r[4]});
        }
    }
    return t;
}

CsvTable gab_table(const TwoPointFunction& g, const std::vector<double>& as, const std::vector<double>& bs) {
    CsvTable t;
    t.meta = {fmt::format("lambda2 = {}", format_double(g.cutoff())), fmt::format("grid = {} x {}", as.size(), bs.size())};
    t.columns = {"a", "b", "tau", "g_ab", "symmetry_defect"};
    for (double a : as)
        for (double b : bs) {
            auto e = g.eval(a, b);
            double sym = (a == b) ? 0.0 : g.symmetry_defect(a, b);
            t.rows.push_back({a, b, e.tau, e.g_ab, sym});
        }
    return t;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error(fmt::format("config line {}: expected key = value", n));
        auto key = trim(line.substr(0, eq));
        if (key.empty()) throw std::runtime_error(fmt::format("config line {}: empty key", n));
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

nlohmann::json RunManifest::to_json() const {
    return {{"command", command}, {"config", config},       {"version", version},
            {"wall_time_s", wall_time_s}, {"outputs", outputs}, {"results", results}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace cfp
