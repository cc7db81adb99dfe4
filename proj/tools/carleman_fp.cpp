#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cfp/errors.hpp"
#include "cfp/export.hpp"
#include "cfp/gab.hpp"
#include "cfp/solver.hpp"
#include "cfp/suites.hpp"

using namespace cfp;

namespace {

enum Exit { kOk = 0, kFailed = 1, kNonConvergence = 2, kEnvelope = 3, kRefused = 4 };

struct SolveFlags {
    double lambda = -1.0 / (2.0 * std::numbers::pi);
    double cutoff = 1e6;
    int nodes = 2000;
    double tol = 1e-8;
    int max_iters = 500;
    double damping = 1.0;
    std::string tail = "power_law";
    bool exploratory = false;
    bool quiet = false;
};

void add_solve_flags(CLI::App* app, SolveFlags& s) {
    app->add_option("--lambda", s.lambda, "coupling, -1/6 <= lambda <= 0");
    app->add_option("--cutoff", s.cutoff, "Lambda^2");
    app->add_option("--nodes", s.nodes, "grid size");
    app->add_option("--tol", s.tol, "LB-norm stopping tolerance");
    app->add_option("--max-iters", s.max_iters);
    app->add_option("--damping", s.damping, "initial mixing weight in (0,1]");
    app->add_option("--tail", s.tail, "power_law | hard_cutoff");
    app->add_flag("--exploratory", s.exploratory, "allow -1/2 < lambda < -1/6, envelope check off");
    app->add_flag("--quiet", s.quiet, "no per-iteration log");
}

SolverConfig solver_config(const SolveFlags& s) {
    SolverConfig cfg;
    cfg.coupling = Coupling(s.lambda, s.exploratory);
    cfg.quad.lambda2 = s.cutoff;
    cfg.quad.n_nodes = s.nodes;
    cfg.quad.tail_mode = tail_mode_from(s.tail);
    if (cfg.coupling.exploratory) cfg.quad.pole_guard = false;
    cfg.tol_lb = s.tol;
    cfg.max_iters = s.max_iters;
    cfg.damping = s.damping;
    if (cfg.coupling.exploratory) cfg.envelope_slack = -1.0;
    cfg.validate();
    return cfg;
}

nlohmann::json config_json(const SolveFlags& s) {
    return {{"lambda", s.lambda}, {"cutoff", s.cutoff},       {"nodes", s.nodes},
            {"tol", s.tol},       {"max_iters", s.max_iters}, {"damping", s.damping},
            {"tail", s.tail},     {"exploratory", s.exploratory}};
}

SolveResult run_solver(const SolverConfig& cfg, bool quiet) {
    return solve(cfg, [&](const IterationReport& r) {
        if (!quiet)
            fmt::print(stderr, "iter {:4d}  dist {:.3e}  residual {:.3e}  envelope {:+.3e}  w {}\n", r.iter,
                       r.lb_distance, r.residual, r.envelope_min_margin, r.damping);
    });
}

nlohmann::json solve_summary(const SolveResult& r) {
    return {{"iterations", r.history.size()},
            {"final_residual", r.final_residual},
            {"last_distance", r.history.empty() ? 0.0 : r.history.back().lb_distance},
            {"tail_exponent", r.tail_exponent}};
}

// Maps library exceptions to exit codes; also records them in the manifest.
template <class F>
int guarded(RunManifest& m, F&& body) {
    try {
        return body();
    } catch (const NonConvergence& e) {
        m.results["error"] = e.what();
        m.results["last_distance"] = e.last_distance;
        fmt::print(stderr, "error: {}\n", e.what());
        return kNonConvergence;
    } catch (const EnvelopeEscape& e) {
        m.results["error"] = e.what();
        m.results["escape_x"] = e.x;
        fmt::print(stderr, "error: {}\n", e.what());
        return kEnvelope;
    } catch (const DomainError& e) {
        m.results["error"] = e.what();
        fmt::print(stderr, "refused: {}\n", e.what());
        return kRefused;
    } catch (const std::exception& e) {
        m.results["error"] = e.what();
        fmt::print(stderr, "error: {}\n", e.what());
        return kFailed;
    }
}

void write_output(RunManifest& m, const std::string& path, const std::string& content) {
    write_file(path, content);
    m.outputs.push_back(path);
}

// Inserts "--key=value" for every config key whose flag is not on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
        else if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    }
    if (path.empty()) return args;
    for (const auto& [k, v] : parse_key_values(read_file(path))) {
        std::string flag = "--" + k;
        bool given = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
        if (!given) args.push_back(flag + "=" + v);
    }
    return args;
}

std::vector<double> default_gab_grid() { return {0.0, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0}; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed-point solver for the boundary two-point function"};
    app.require_subcommand(1);
    std::string config_path;

    SolveFlags sf;
    std::string out, manifest_path;

    auto* solve_cmd = app.add_subcommand("solve", "iterate f <- Tf and write the solution CSV");
    add_solve_flags(solve_cmd, sf);
    std::string json_out;
    solve_cmd->add_option("--out", out, "solution CSV")->default_val("solution.csv");
    solve_cmd->add_option("--json", json_out, "solution as JSON with metadata");

    auto* fig_cmd = app.add_subcommand("figure2", "solution with envelopes over four b windows");
    add_solve_flags(fig_cmd, sf);
    fig_cmd->add_option("--out", out)->default_val("figure2.csv");

    SuiteOptions so;
    std::string suite = "all";
    auto* verify_cmd = app.add_subcommand("verify", "run inequality and identity checks");
    verify_cmd->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));
    verify_cmd->add_option("--lambda-grid", so.lambda_grid, "lambda samples for the coefficient scans");
    verify_cmd->add_option("--seed", so.seed);
    verify_cmd->add_option("--nodes", so.n_nodes);
    verify_cmd->add_option("--cutoff", so.lambda2);
    verify_cmd->add_option("--members", so.members, "random K_lambda members per lambda");
    verify_cmd->add_option("--out", out, "JSON report")->default_val("verify.json");

    std::vector<double> as = default_gab_grid(), bs = default_gab_grid();
    auto* gab_cmd = app.add_subcommand("gab", "G_ab on a rectangular grid from a fresh solve");
    add_solve_flags(gab_cmd, sf);
    gab_cmd->add_option("--a", as, "a values")->delimiter(',');
    gab_cmd->add_option("--b", bs, "b values")->delimiter(',');
    gab_cmd->add_option("--out", out)->default_val("gab.csv");

    for (auto* sub : {solve_cmd, fig_cmd, verify_cmd, gab_cmd}) {
        sub->add_option("--config", config_path, "flat key = value file, flags take precedence");
        sub->add_option("--manifest", manifest_path, "run manifest, default <out>.manifest.json");
    }

    std::vector<std::string> args(argv + 1, argv + argc);
    std::vector<std::string> merged;
    try {
        merged = merge_config(args);
    } catch (const std::exception& e) {
        fmt::print(stderr, "config: {}\n", e.what());
        return kRefused;
    }
    std::vector<char*> cargs{argv[0]};
    for (auto& s : merged) cargs.push_back(s.data());
    try {
        app.parse(int(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kRefused;
    }

    const auto t0 = std::chrono::steady_clock::now();
    RunManifest m;
    m.version = software_version();
    m.command = "carleman-fp";
    for (const auto& a : args) m.command += " " + a;

    int code = kOk;
    if (solve_cmd->parsed()) {
        m.config = config_json(sf);
        code = guarded(m, [&] {
            auto cfg = solver_config(sf);
            auto r = run_solver(cfg, sf.quiet);
            m.results = solve_summary(r);
            auto table = solution_table(r.f, cfg.coupling);
            table.meta.push_back(fmt::format("iterations = {}", r.history.size()));
            table.meta.push_back(fmt::format("final_residual = {}", format_double(r.final_residual)));
            table.meta.push_back(fmt::format("tail_exponent = {}", format_double(r.tail_exponent)));
            write_output(m, out, to_csv(table));
            if (!json_out.empty()) {
                nlohmann::json j = {{"lambda", sf.lambda}, {"lambda2", sf.cutoff}, {"tail", sf.tail}};
                j.update(solve_summary(r));
                j["b"] = r.f.nodes;
                j["f"] = r.f.values;
                write_output(m, json_out, j.dump(1));
            }
            fmt::print("converged in {} iterations, residual {:.3e}, tail exponent {:.6f}\n", r.history.size(),
                       r.final_residual, r.tail_exponent);
            return int(kOk);
        });
    } else if (fig_cmd->parsed()) {
        m.config = config_json(sf);
        code = guarded(m, [&] {
            auto cfg = solver_config(sf);
            auto r = run_solver(cfg, sf.quiet);
            m.results = solve_summary(r);
            auto table = figure2_table(r.f, cfg.coupling);
            std::size_t outside = 0;
            for (const auto& row : table.rows)
                if (row[2] < row[3] || row[2] > row[4]) ++outside;
            m.results["rows"] = table.rows.size();
            m.results["rows_outside_envelopes"] = outside;
            write_output(m, out, to_csv(table));
            fmt::print("{} rows, {} outside the envelopes\n", table.rows.size(), outside);
            return int(outside == 0 ? kOk : kFailed);
        });
    } else if (verify_cmd->parsed()) {
        m.config = {{"suite", suite},        {"lambda_grid", so.lambda_grid}, {"seed", so.seed},
                    {"nodes", so.n_nodes},   {"cutoff", so.lambda2},          {"members", so.members}};
        code = guarded(m, [&] {
            auto reports = run_suite(suite, so);
            nlohmann::json j = nlohmann::json::array();
            std::size_t failed = 0;
            for (const auto& r : reports) {
                fmt::print("{}\n", r.to_text());
                j.push_back(r.to_json());
                if (!r.passed) ++failed;
            }
            m.results = {{"reports", reports.size()}, {"failed", failed}};
            write_output(m, out, nlohmann::json{{"suite", suite}, {"reports", j}}.dump(1));
            fmt::print("{} of {} passed\n", reports.size() - failed, reports.size());
            return int(failed == 0 ? kOk : kFailed);
        });
    } else if (gab_cmd->parsed()) {
        m.config = config_json(sf);
        m.config["a"] = as;
        m.config["b"] = bs;
        code = guarded(m, [&] {
            auto cfg = solver_config(sf);
            if (cfg.coupling.is_zero()) throw DomainError("gab needs lambda < 0");
            for (double v : as)
                if (!(v >= 0.0 && v < sf.cutoff)) throw DomainError("a values must lie in [0, cutoff)");
            for (double v : bs)
                if (!(v >= 0.0 && v < sf.cutoff)) throw DomainError("b values must lie in [0, cutoff)");
            auto r = run_solver(cfg, sf.quiet);
            m.results = solve_summary(r);
            TwoPointFunction g(r.f, cfg.coupling, cfg.quad);
            auto table = gab_table(g, as, bs);
            write_output(m, out, to_csv(table));
            fmt::print("{} x {} values written\n", as.size(), bs.size());
            return int(kOk);
        });
    }

    m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.results["exit_code"] = code;
    if (manifest_path.empty()) manifest_path = out + ".manifest.json";
    try {
        write_file(manifest_path, m.to_json().dump(1));
    } catch (const std::exception& e) {
        fmt::print(stderr, "manifest: {}\n", e.what());
        if (code == kOk) code = kFailed;
    }
    return code;
}
