#include "cfp/suites.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "cfp/appendix.hpp"
#include "cfp/bounds.hpp"
#include "cfp/errors.hpp"
#include "cfp/operators.hpp"

namespace cfp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBandSlack = 1e-6;

const std::vector<double>& band_lambdas() {
    static const std::vector<double> v{-0.02, -0.08, -1.0 / (2.0 * kPi), -1.0 / 6.0};
    return v;
}

const std::vector<double>& continuity_lambdas() {
    static const std::vector<double> v{-0.05, -1.0 / (2.0 * kPi), -1.0 / 6.0};
    return v;
}

QuadratureConfig suite_config(const SuiteOptions& opt) {
    QuadratureConfig cfg;
    cfg.n_nodes = opt.n_nodes;
    cfg.lambda2 = opt.lambda2;
    cfg.validate();
    return cfg;
}

// seed mixed with lambda so suites are reproducible independently of each other
std::mt19937_64 rng_for(const SuiteOptions& opt, double lambda, std::uint64_t salt) {
    std::seed_seq seq{opt.seed, salt, std::uint64_t(std::llround(-lambda * 1e9))};
    return std::mt19937_64(seq);
}

std::string tag(double lambda) { return fmt::format("{:.6g}", lambda); }

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> v{"lemma3", "lemma4", "ck", "prop4", "prop5", "equicont", "appendix", "all"};
    return v;
}

VerificationReport verify_k_lambda_preservation(double lambda, const SuiteOptions& opt) {
    Coupling c(lambda);
    auto cfg = suite_config(opt);
    auto nodes = make_nodes(cfg.lambda2, cfg.n_nodes);
    auto rng = rng_for(opt, lambda, 1);
    double worst = INFINITY, where = 0.0;
    for (int k = 0; k < opt.members; ++k) {
        auto g = t_op(random_k_lambda(c, nodes, rng), c, cfg);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            double v = (1.0 + nodes[i]) * g.derivs[i];
            double m = std::min(v + (1.0 - c.abs), -(1.0 - c.lambda_r) - v) + kBandSlack;
            if (m < worst) {
                worst = m;
                where = nodes[i];
            }
        }
    }
    return make_report("band.T_preserves[" + tag(lambda) + "]",
                       fmt::format("{} random members, {} nodes, band slack 1e-6", opt.members, nodes.size()),
                       worst, {where}, std::size_t(opt.members) * nodes.size());
}

VerificationReport verify_rf_sandwich(double lambda, const SuiteOptions& opt) {
    Coupling c(lambda);
    auto cfg = suite_config(opt);
    auto nodes = make_nodes(cfg.lambda2, cfg.n_nodes);
    auto rng = rng_for(opt, lambda, 2);
    const double cot_lr = 1.0 / std::tan(c.lambda_r * kPi), cot_l = 1.0 / std::tan(c.abs * kPi);
    auto as = log_grid(1e-3, cfg.lambda2, 100);
    double worst = INFINITY, where = 0.0;
    std::size_t bad = 0;
    for (int k = 0; k < opt.members; ++k) {
        TransformContext ctx(random_k_lambda(c, nodes, rng), c, cfg);
        for (double a : as) {
            double r = ctx.rf(a);
            double lo = c.alpha() * a * cot_lr + 1.0 + c.abs * f_bound(a);
            double hi = c.alpha() * a * cot_l + 1.0;
            double m = std::min(r - lo, hi - r) + kBandSlack;
            if (m < 0.0) ++bad;
            if (m < worst) {
                worst = m;
                where = a;
            }
        }
    }
    return make_report("rf.sandwich[" + tag(lambda) + "]",
                       fmt::format("{} random members x 100 log a in [1e-3, {:g}], slack 1e-6", opt.members, cfg.lambda2),
                       worst, {where}, std::size_t(opt.members) * as.size(), bad);
}

VerificationReport verify_delta_r(double lambda, const SuiteOptions& opt) {
    Coupling c(lambda);
    auto cfg = suite_config(opt);
    auto nodes = make_nodes(cfg.lambda2, cfg.n_nodes);
    auto rng = rng_for(opt, lambda, 3);
    auto ts = log_grid(1e-3, cfg.lambda2, 60);
    double worst = INFINITY, where = 0.0;
    for (int k = 0; k < opt.members; ++k) {
        auto f = random_k_lambda(c, nodes, rng), g = random_k_lambda(c, nodes, rng);
        double delta = lb_distance(f, g);
        TransformContext cf(f, c, cfg), cg(g, c, cfg);
        for (double t : ts) {
            auto d = delta_r_bounds(t, delta, c);
            double m = d[0] + d[1] + d[2] + kBandSlack - std::fabs(cf.rf(t) - cg.rf(t));
            if (m < worst) {
                worst = m;
                where = t;
            }
        }
    }
    return make_report("rf.difference[" + tag(lambda) + "]",
                       fmt::format("{} random pairs x 60 log t, slack 1e-6", opt.members), worst, {where},
                       std::size_t(opt.members) * ts.size());
}

VerificationReport verify_continuity(double lambda, const SuiteOptions& opt) {
    Coupling c(lambda);
    auto cfg = suite_config(opt);
    auto nodes = make_nodes(cfg.lambda2, cfg.n_nodes);
    auto rng = rng_for(opt, lambda, 4);
    const double K = continuity_constant(c);
    double worst = INFINITY, worst_ratio = 0.0;
    for (int k = 0; k < opt.members; ++k) {
        auto f = random_k_lambda(c, nodes, rng), g = random_k_lambda(c, nodes, rng);
        double d = lb_distance(f, g);
        if (d == 0.0) continue;
        double ratio = lb_distance(t_op(f, c, cfg), t_op(g, c, cfg)) / d;
        worst_ratio = std::max(worst_ratio, ratio);
        worst = std::min(worst, 1.01 * K - ratio);
    }
    return make_report("T.continuity[" + tag(lambda) + "]",
                       fmt::format("{} random pairs, 1.01 K(l) - |Tf-Tg|/|f-g|, K = {:.6f}", opt.members, K), worst,
                       {worst_ratio}, std::size_t(opt.members));
}

VerificationReport verify_equicontinuity(double lambda, const SuiteOptions& opt) {
    Coupling c(lambda);
    auto cfg = suite_config(opt);
    auto nodes = make_nodes(cfg.lambda2, cfg.n_nodes);
    auto rng = rng_for(opt, lambda, 5);
    double worst = INFINITY, wa = 0.0, wb = 0.0;
    std::size_t pairs = 0;
    for (int k = 0; k < opt.members; ++k) {
        auto g = t_op(random_k_lambda(c, nodes, rng), c, cfg);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            double ui = (1.0 + nodes[i]) * g.derivs[i];
            for (std::size_t j = i + 1; j < nodes.size() && nodes[j] - nodes[i] <= 1.0; ++j) {
                double uj = (1.0 + nodes[j]) * g.derivs[j];
                double m = (nodes[j] - nodes[i]) * (1.0 + 1e-6) - std::fabs(ui - uj);
                ++pairs;
                if (m < worst) {
                    worst = m;
                    wa = nodes[i];
                    wb = nodes[j];
                }
            }
        }
    }
    return make_report("equicont[" + tag(lambda) + "]",
                       fmt::format("{} random members, node pairs with |a-b| <= 1", opt.members), worst, {wa, wb},
                       pairs);
}

std::vector<VerificationReport> verify_appendix_identities(const SuiteOptions&) {
    // margins are 1 - error/tolerance
    std::vector<VerificationReport> out;
    for (double u : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        auto r = cauchy_integral(u);
        out.push_back(make_report(fmt::format("cauchy[u={:g}]", u), "1 - |quadrature - 1/(u(u+1))| / 1e-8",
                                  1.0 - std::fabs(r.numeric - r.closed_form) / 1e-8, {u}, 1));
    }
    Coupling c(-1.0 / (2.0 * kPi));
    for (double L : {1e4, 1e6, 1e8}) {
        auto g = t0_check_grid(c, L, 800);
        out.push_back(make_report(fmt::format("T0.value[L2={:g}]", L),
                                  "1 - |T0(b) - closed form| / 1e-6 over nodes", 1.0 - g.worst_value_error / 1e-6,
                                  {g.worst_value_b}, g.nodes));
        out.push_back(make_report(fmt::format("T0.deriv[L2={:g}]", L),
                                  "1 - |(T0)'(b) + 1/(|l| L2 + 1 + b)| / 1e-9 over nodes",
                                  1.0 - g.worst_deriv_error / 1e-9, {g.worst_deriv_b}, g.nodes));
    }
    // decay to 0 at the rate b/(1+|l| L2): the ratio stays in [1/2, 1] and |T0(b)| shrinks with L2
    double worst = INFINITY, where = 0.0;
    std::size_t bad = 0;
    for (double b : {1.0, 10.0, 100.0}) {
        double prev = INFINITY;
        for (double L : {1e4, 1e6, 1e8}) {
            double v = std::fabs(t0_check(b, c, L).computed);
            double ratio = v * (1.0 + c.abs * L) / b;
            double m = std::min(1.0 + 1e-6 - ratio, ratio - 0.5);
            if (!(v < prev)) ++bad;
            if (m < worst) {
                worst = m;
                where = b;
            }
            prev = v;
        }
    }
    if (bad) worst = std::min(worst, -1.0);
    out.push_back(make_report("T0.decay",
                              "|T0(b)| (1+|l| L2)/b in [1/2, 1+1e-6] and decreasing in L2, b in {1,10,100}", worst,
                              {where}, 9, bad));
    return out;
}

std::vector<VerificationReport> run_suite(const std::string& name, const SuiteOptions& opt) {
    std::vector<VerificationReport> out;
    auto add = [&](std::vector<VerificationReport> v) { out.insert(out.end(), v.begin(), v.end()); };
    bool all = name == "all";
    bool known = false;
    if (all || name == "lemma3") {
        known = true;
        add(verify_F_properties());
    }
    if (all || name == "lemma4") {
        known = true;
        out.push_back(verify_f_ge_s());
    }
    if (all || name == "ck") {
        known = true;
        out.push_back(verify_master(opt.lambda_grid, 1000));
        out.push_back(verify_c_coeffs(opt.lambda_grid));
        for (double l : band_lambdas()) out.push_back(verify_k_lambda_preservation(l, opt));
    }
    if (all || name == "prop4") {
        known = true;
        for (double l : continuity_lambdas()) {
            out.push_back(verify_rf_sandwich(l, opt));
            out.push_back(verify_delta_r(l, opt));
        }
    }
    if (all || name == "prop5") {
        known = true;
        for (double l : continuity_lambdas()) out.push_back(verify_continuity(l, opt));
        for (double l : {-0.05, -0.1, -1.0 / 6.0}) {
            out.push_back(verify_c_aux_sup(Coupling(l)));
            out.push_back(verify_c_tilde_sup(Coupling(l)));
        }
    }
    if (all || name == "equicont") {
        known = true;
        for (double l : continuity_lambdas()) out.push_back(verify_equicontinuity(l, opt));
    }
    if (all || name == "appendix") {
        known = true;
        add(verify_appendix_identities(opt));
    }
    if (!known) throw DomainError("unknown suite: " + name);
    return out;
}

}  // namespace cfp
