#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cfp/coupling.hpp"
#include "cfp/grid.hpp"
#include "cfp/hilbert.hpp"

namespace cfp {

struct SolverConfig {
    Coupling coupling;
    QuadratureConfig quad;  // lambda2, n_nodes, tail_mode live here
    double damping = 1.0;
    double tol_lb = 1e-8;
    int max_iters = 500;
    // EnvelopeEscape when an iterate leaves the K_lambda band by more than this,
    // relative to the band edge. Negative disables the check.
    double envelope_slack = 1e-6;

    void validate() const;
};

struct IterationReport {
    int iter = 0;
    double lb_distance = 0.0;          // |f_{n+1} - f_n|
    double envelope_min_margin = 0.0;  // of f_{n+1}
    double residual = 0.0;             // |T f_n - f_n|
    double damping = 1.0;
};

struct SolveResult {
    GridFunction f;
    std::vector<IterationReport> history;
    double final_residual = 0.0;  // |T f - f| for the returned f
    double tail_exponent = 0.0;   // fitted p in e^f ~ (1+b)^p
};

// -(1-|l|) log(1+x), the lower envelope.
GridFunction initial_guess(const Coupling& c, const std::vector<double>& nodes);

// f <- (1-w) f + w Tf until lb_distance < tol_lb. The damping halves after three
// consecutive increases of the distance. Throws NonConvergence, EnvelopeEscape.
SolveResult solve(const SolverConfig& cfg,
                  const std::function<void(const IterationReport&)>& on_iter = {});

// max over nodes b <= b_max of |1 - exp(Tf(b) - f(b))|, Tf from the direct arctan
// form.
double consistency_residual(const GridFunction& f, const Coupling& c, const QuadratureConfig& cfg,
                            double b_max = INFINITY);

struct ScanEntry {
    double lambda = 0.0;
    bool exploratory = false;
    bool converged = false;
    int iterations = 0;
    double last_distance = 0.0;
    double envelope_min_margin = 0.0;
    double tail_exponent = 0.0;
    double g_at_one = 0.0;  // exp f(1)
    std::string error;
};

// Diagnostic: one solve per lambda. Values below -1/6 run in exploratory mode with
// the envelope check off; failures are recorded, not thrown.
std::vector<ScanEntry> lambda_scan(const std::vector<double>& lambdas, const SolverConfig& base);

}  // namespace cfp
