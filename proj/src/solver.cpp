#include "cfp/solver.hpp"

#include <cmath>

#include "cfp/errors.hpp"
#include "cfp/operators.hpp"
#include "cfp/quadrature.hpp"

namespace cfp {

void SolverConfig::validate() const {
    quad.validate();
    if (!(damping > 0.0 && damping <= 1.0)) throw DomainError("damping must lie in (0, 1]");
    if (!(tol_lb > 0.0)) throw DomainError("tol_lb must be positive");
    if (max_iters < 1) throw DomainError("max_iters must be >= 1");
}

GridFunction initial_guess(const Coupling& c, const std::vector<double>& nodes) {
    return log_power(nodes, -(1.0 - c.abs));
}

namespace {

GridFunction mix(const GridFunction& f, const GridFunction& g, double w) {
    if (w == 1.0) return g;
    std::vector<double> v(f.size()), d(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        v[i] = (1.0 - w) * f.values[i] + w * g.values[i];
        d[i] = (1.0 - w) * f.derivs[i] + w * g.derivs[i];
    }
    return GridFunction(f.nodes, std::move(v), std::move(d));
}

// Margin relative to the band edge, so slack is a relative tolerance.
double relative_margin(const GridFunction& f, const Coupling& c, std::size_t* where) {
    return envelope_margin(f, c, where) / (1.0 - c.abs);
}

}  // namespace

SolveResult solve(const SolverConfig& cfg, const std::function<void(const IterationReport&)>& on_iter) {
    cfg.validate();
    const Coupling& c = cfg.coupling;
    auto nodes = make_nodes(cfg.quad.lambda2, cfg.quad.n_nodes);
    SolveResult out;
    GridFunction f = initial_guess(c, nodes);
    double w = cfg.damping;
    double prev = INFINITY;
    int rising = 0;
    const bool check = cfg.envelope_slack >= 0.0 && !c.exploratory;

    for (int it = 1; it <= cfg.max_iters; ++it) {
        GridFunction tf = TransformContext(f, c, cfg.quad).t_op();
        IterationReport rep;
        rep.iter = it;
        rep.damping = w;
        rep.residual = lb_distance(tf, f);
        GridFunction next = mix(f, tf, w);
        rep.lb_distance = lb_distance(next, f);
        std::size_t where = 0;
        rep.envelope_min_margin = relative_margin(next, c, &where);
        out.history.push_back(rep);
        if (on_iter) on_iter(rep);
        if (check && rep.envelope_min_margin < -cfg.envelope_slack)
            throw EnvelopeEscape(where, nodes[where], rep.envelope_min_margin);
        f = std::move(next);
        if (rep.lb_distance < cfg.tol_lb) {
            out.f = f;
            out.final_residual = lb_distance(TransformContext(f, c, cfg.quad).t_op(), f);
            out.tail_exponent = f.tail_exponent();
            return out;
        }
        rising = rep.lb_distance > prev ? rising + 1 : 0;
        if (rising >= 3) {
            w *= 0.5;
            rising = 0;
        }
        prev = rep.lb_distance;
    }
    throw NonConvergence(cfg.max_iters, prev);
}

double consistency_residual(const GridFunction& f, const Coupling& c, const QuadratureConfig& cfg, double b_max) {
    TransformContext ctx(f, c, cfg);
    std::vector<double> r(f.size(), 0.0);
    parallel_for(f.size(), [&](std::size_t i) {
        double b = f.nodes[i];
        if (b > b_max) return;
        r[i] = std::fabs(std::expm1(ctx.t_direct(b) - f.values[i]));
    });
    double m = 0.0;
    for (double v : r) m = std::max(m, v);
    return m;
}

std::vector<ScanEntry> lambda_scan(const std::vector<double>& lambdas, const SolverConfig& base) {
    std::vector<ScanEntry> out;
    for (double lam : lambdas) {
        ScanEntry e;
        e.lambda = lam;
        try {
            SolverConfig cfg = base;
            cfg.coupling = Coupling(lam, true);
            e.exploratory = cfg.coupling.exploratory;
            if (e.exploratory) {
                cfg.envelope_slack = -1.0;
                cfg.quad.pole_guard = false;
            }
            int iters = 0;
            double last = 0.0, margin = INFINITY;
            auto track = [&](const IterationReport& r) {
                iters = r.iter;
                last = r.lb_distance;
                margin = std::min(margin, r.envelope_min_margin);
            };
            try {
                auto res = solve(cfg, track);
                e.converged = true;
                e.tail_exponent = res.tail_exponent;
                e.g_at_one = std::exp(res.f.value(1.0));
            } catch (const std::exception& ex) {
                e.error = ex.what();
            }
            e.iterations = iters;
            e.last_distance = last;
            e.envelope_min_margin = margin;
        } catch (const std::exception& ex) {
            e.error = ex.what();
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace cfp
