#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cfp/coupling.hpp"
#include "cfp/gab.hpp"
#include "cfp/grid.hpp"

namespace cfp {

// '#' metadata lines, a header row, then rows of doubles printed with 17 significant digits.
struct CsvTable {
    std::vector<std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string format_double(double v);
std::string to_csv(const CsvTable& t);
CsvTable parse_csv(const std::string& text);

// b, f, exp_f, lower, upper with lower = (1+b)^-(1-|l|), upper = (1+b)^-(1-l_r)
CsvTable solution_table(const GridFunction& f, const Coupling& c);

// Solution rows restricted to the b windows [0,1], [1,1e2], [1e2,1e4], [1e4,1e6] with
// a leading window index. Nodes on a window edge appear in both windows.
CsvTable figure2_table(const GridFunction& f, const Coupling& c);
const std::vector<std::pair<double, double>>& figure2_windows();

// a, b, tau, g_ab, symmetry_defect over the product grid (a outer)
CsvTable gab_table(const TwoPointFunction& g, const std::vector<double>& as, const std::vector<double>& bs);

// Flat key = value lines; '#' starts a comment, blank lines ignored.
std::map<std::string, std::string> parse_key_values(const std::string& text);

struct RunManifest {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::string version;
    double wall_time_s = 0.0;
    std::vector<std::string> outputs;
    nlohmann::json results = nlohmann::json::object();

    nlohmann::json to_json() const;
};

const char* software_version();

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace cfp
