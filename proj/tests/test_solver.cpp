#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cfp/errors.hpp"
#include "cfp/operators.hpp"
#include "cfp/solver.hpp"

using namespace cfp;

namespace {

constexpr double kLam2pi = -1.0 / (2.0 * std::numbers::pi);

SolverConfig small_cfg(double lam, double L = 1e6, int n = 400) {
    SolverConfig cfg;
    cfg.coupling = Coupling(lam);
    cfg.quad.lambda2 = L;
    cfg.quad.n_nodes = n;
    return cfg;
}

// one solve shared by several tests
const SolveResult& reference_solution() {
    static const SolveResult r = solve(small_cfg(kLam2pi));
    return r;
}

}  // namespace

TEST(InitialGuess, LowerEnvelope) {
    Coupling c(-0.1);
    auto nodes = make_nodes(1e6, 200);
    auto f = initial_guess(c, nodes);
    EXPECT_EQ(f.values[0], 0.0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        EXPECT_NEAR((1.0 + nodes[i]) * f.derivs[i], -0.9, 1e-14);
        EXPECT_NEAR(f.values[i], -0.9 * std::log1p(nodes[i]), 1e-12 * (1.0 + std::log1p(nodes[i])));
    }
    EXPECT_NEAR(envelope_margin(f, c), 0.0, 1e-14);
}

TEST(Config, Validation) {
    auto cfg = small_cfg(-0.1);
    cfg.damping = 0.0;
    EXPECT_THROW(cfg.validate(), DomainError);
    cfg.damping = 1.5;
    EXPECT_THROW(cfg.validate(), DomainError);
    cfg.damping = 0.5;
    cfg.tol_lb = 0.0;
    EXPECT_THROW(cfg.validate(), DomainError);
    cfg.tol_lb = 1e-8;
    cfg.max_iters = 0;
    EXPECT_THROW(cfg.validate(), DomainError);
    EXPECT_THROW(Coupling(-0.2), DomainError);
}

TEST(Solve, LambdaZeroIsOneStep) {
    auto r = solve(small_cfg(0.0, 1e4, 200));
    ASSERT_EQ(r.history.size(), 1u);
    EXPECT_EQ(r.final_residual, 0.0);
    for (std::size_t i = 0; i < r.f.size(); ++i) {
        double b = r.f.nodes[i];
        EXPECT_NEAR(r.f.values[i], -std::log1p(b), 1e-13 * (1.0 + std::log1p(b)));
        EXPECT_NEAR((1.0 + b) * r.f.derivs[i], -1.0, 1e-14);
    }
}

TEST(Solve, ConvergesInsideEnvelopes) {
    const auto& r = reference_solution();
    Coupling c(kLam2pi);
    ASSERT_FALSE(r.history.empty());
    EXPECT_LT(r.history.back().lb_distance, 1e-8);
    EXPECT_LT(r.history.size(), 500u);
    for (std::size_t i = 0; i < r.f.size(); ++i) {
        double b = r.f.nodes[i], g = std::exp(r.f.values[i]);
        EXPECT_GE(g, std::pow(1.0 + b, -(1.0 - c.abs)) * (1.0 - 1e-12)) << b;
        EXPECT_LE(g, std::pow(1.0 + b, -(1.0 - c.lambda_r)) * (1.0 + 1e-12)) << b;
    }
}

TEST(Solve, EveryIterateStaysInBand) {
    for (const auto& h : reference_solution().history) {
        EXPECT_GE(h.envelope_min_margin, -1e-6) << h.iter;
        EXPECT_GE(h.lb_distance, 0.0);
    }
}

TEST(Solve, ResidualFromIndependentApplication) {
    const auto& r = reference_solution();
    auto cfg = small_cfg(kLam2pi);
    double res = lb_distance(t_op(r.f, Coupling(kLam2pi), cfg.quad), r.f);
    EXPECT_LT(res, 1e-8);
    EXPECT_NEAR(res, r.final_residual, 1e-15);
}

TEST(Solve, ConsistencyResidual) {
    const auto& r = reference_solution();
    auto cfg = small_cfg(kLam2pi);
    EXPECT_LT(consistency_residual(r.f, Coupling(kLam2pi), cfg.quad), 1e-7);
}

TEST(Solve, TailExponentBetweenEnvelopes) {
    Coupling c(kLam2pi);
    double p = reference_solution().tail_exponent;
    EXPECT_GT(p, -(1.0 - c.abs));
    EXPECT_LT(p, -(1.0 - c.lambda_r));
}

TEST(Solve, NonConvergenceReported) {
    auto cfg = small_cfg(kLam2pi, 1e6, 200);
    cfg.max_iters = 2;
    try {
        solve(cfg);
        FAIL() << "expected NonConvergence";
    } catch (const NonConvergence& e) {
        EXPECT_EQ(e.iterations, 2);
        EXPECT_GT(e.last_distance, 1e-8);
    }
}

TEST(Solve, DampedIterationReachesSameFixedPoint) {
    auto cfg = small_cfg(-0.1, 1e5, 200);
    auto plain = solve(cfg);
    cfg.damping = 0.5;
    auto damped = solve(cfg);
    EXPECT_GT(damped.history.size(), plain.history.size());
    EXPECT_LT(lb_distance(plain.f, damped.f), 1e-7);
}

TEST(Solve, CutoffRobustness) {
    Coupling c(kLam2pi);
    auto r5 = solve(small_cfg(kLam2pi, 1e5, 400));
    auto r6 = solve(small_cfg(kLam2pi, 1e6, 400));
    double d = std::fabs(r5.f.values[0] - r6.f.values[0]);
    for (std::size_t i = 0; i < r5.f.size() && r5.f.nodes[i] <= 1e4; ++i) {
        double x = r5.f.nodes[i];
        d = std::max(d, std::fabs((1.0 + x) * (r5.f.derivs[i] - r6.f.deriv(x))));
    }
    const double L = 1e5;
    double bound = 10.0 * (std::pow(1.0 + L, c.lambda_r - 1.0) - std::pow(1.0 + L, c.abs - 1.0));
    EXPECT_LT(d, bound);
}

TEST(Consistency, ConstantFunctionTrend) {
    // f = 0 solves the hard-cutoff equation only as the cutoff grows
    Coupling c(kLam2pi);
    double prev = INFINITY;
    for (double L : {1e4, 1e6, 1e8}) {
        QuadratureConfig q;
        q.lambda2 = L;
        q.n_nodes = 400;
        q.tail_mode = TailMode::hard_cutoff;
        q.pole_guard = false;
        double r = consistency_residual(zero_function(make_nodes(L, 400)), c, q, 100.0);
        EXPECT_LT(r, prev);
        EXPECT_LT(r, 1.01 * 100.0 / (1.0 + c.abs * L));
        prev = r;
    }
}

TEST(Consistency, ZeroAtOrigin) {
    const auto& r = reference_solution();
    EXPECT_LT(consistency_residual(r.f, Coupling(kLam2pi), small_cfg(kLam2pi).quad, 0.0), 1e-12);
}

TEST(LambdaScan, RecordsWithoutAsserting) {
    SolverConfig base = small_cfg(0.0, 1e5, 200);
    base.max_iters = 60;
    auto scan = lambda_scan({0.0, -0.05, -1.0 / 6.0, -0.45}, base);
    ASSERT_EQ(scan.size(), 4u);
    EXPECT_TRUE(scan[0].converged);
    EXPECT_EQ(scan[0].iterations, 1);
    for (int k : {1, 2}) {
        EXPECT_TRUE(scan[k].converged) << scan[k].error;
        EXPECT_FALSE(scan[k].exploratory);
        EXPECT_GE(scan[k].envelope_min_margin, -1e-6);
        EXPECT_GT(scan[k].g_at_one, 0.0);
    }
    EXPECT_TRUE(scan[3].exploratory);
    EXPECT_TRUE(scan[3].converged || !scan[3].error.empty());
}
