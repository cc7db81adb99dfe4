#include "cfp/gab.hpp"

#include <cmath>
#include <numbers>

#include "cfp/errors.hpp"
#include "cfp/quadrature.hpp"

namespace cfp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBranchEps = 1e-12;
constexpr double kCutoffTol = 1e-3;
// Richardson points for the a -> 0 limit
constexpr double kA0 = 1e-4;

}  // namespace

double arctan_0pi(double y, double x) {
    if (y < 0.0) throw DomainError("arctan_0pi: y must be >= 0");
    return std::atan2(y, x);
}

TwoPointFunction::TwoPointFunction(const GridFunction& f, const Coupling& c, const QuadratureConfig& cfg)
    : f_(f), c_(c), ctx_(f, c, cfg) {
    if (c.is_zero()) throw DomainError("G_ab needs lambda < 0");
    rf_nodes_.resize(f_.size());
    const bool power = cfg.tail_mode == TailMode::power_law;
    // truncated H_a diverges to -inf at the cutoff, so Rf -> +inf and tau_b(L) = 0
    parallel_for(f_.size(), [&](std::size_t i) {
        rf_nodes_[i] = (!power && i + 1 == f_.size()) ? INFINITY : ctx_.rf(f_.nodes[i]);
    });
    h00_ = SampledHilbert(f_.nodes, tau_on_nodes(0.0)).at(0.0);
    if (power) {
        tail_ = true;
        const GaussRule& g = gauss_rule(8);
        constexpr int decades = 8, per = 8;
        const double r = std::pow(10.0, 1.0 / per);
        double lo = f_.cutoff();
        for (int k = 0; k < decades * per; ++k, lo *= r) append_panel(g, lo, lo * r, tx_, tw_);
        x_end_ = lo;
        trf_.resize(tx_.size());
        parallel_for(tx_.size(), [&](std::size_t k) { trf_[k] = ctx_.rf(tx_[k]); });
        // Rf ~ s x far out, tau_0 -> atan2(|l| pi, s)
        slope_inf_ = ctx_.rf(x_end_) / x_end_;
        theta_inf_ = std::atan2(c_.alpha(), slope_inf_);
    }
}

double TwoPointFunction::tail_term(double a, double b) const {
    if (!tail_) return 0.0;
    const double al = c_.alpha();
    double s = 0.0;
    for (std::size_t k = 0; k < tx_.size(); ++k) {
        double x = tx_[k];
        double tb = std::atan2(al * x, b + trf_[k]), t0 = std::atan2(al * x, trf_[k]);
        s += tw_[k] * (tb / (x - a) - t0 / x);
    }
    // integrand ~ (a theta - b |l|pi/(|l|^2 pi^2 + s^2)) / x^2 beyond
    s += (a * theta_inf_ - b * al / (al * al + slope_inf_ * slope_inf_)) / x_end_;
    return s / kPi;
}

double TwoPointFunction::tau(double a, double b, bool* branch_flag) const {
    double d = b + ctx_.rf(a);
    if (branch_flag) *branch_flag = std::fabs(d) < kBranchEps;
    return arctan_0pi(c_.alpha() * a, d);
}

std::vector<double> TwoPointFunction::tau_on_nodes(double b) const {
    std::vector<double> t(f_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::atan2(c_.alpha() * f_.nodes[i], b + rf_nodes_[i]);
    return t;
}

double TwoPointFunction::g_positive(double a, double b, bool* branch, bool* warn) const {
    auto tb = tau_on_nodes(b);
    const double L = f_.cutoff();
    double h = SampledHilbert(f_.nodes, tb).at(a);
    if (tail_) {
        double tt = tail_term(a, b);
        h += tt;
        if (warn) *warn = std::fabs(tt) > kCutoffTol;
    } else if (warn) {
        // continuation of tau past L at its last interior level
        *warn = tb[tb.size() - 2] * std::log(L / (L - a)) / kPi > kCutoffTol;
    }
    double t = tau(a, b, branch);
    // sign(lambda) = -1
    return std::exp(-(h - h00_)) * std::sin(t) / (c_.alpha() * a);
}

TwoPointEval TwoPointFunction::eval(double a, double b) const {
    if (a < 0.0 || b < 0.0) throw DomainError("G_ab: a, b must be >= 0");
    if (a >= f_.cutoff()) throw DomainError("G_ab: a must lie below the cutoff");
    TwoPointEval e;
    e.a = a;
    e.b = b;
    if (a == 0.0) {
        e.tau = 0.0;
        if (b == 0.0) {
            e.g_ab = 1.0;
            return e;
        }
        bool w = false;
        double g1 = g_positive(kA0, b, nullptr, &w);
        double g2 = g_positive(kA0 / 2, b, nullptr, nullptr);
        double g3 = g_positive(kA0 / 4, b, nullptr, nullptr);
        double r1 = 2.0 * g2 - g1, r2 = 2.0 * g3 - g2;
        e.g_ab = (4.0 * r2 - r1) / 3.0;
        e.cutoff_warning = w;
        return e;
    }
    e.tau = tau(a, b, &e.branch_flag);
    e.g_ab = g_positive(a, b, nullptr, &e.cutoff_warning);
    return e;
}

double TwoPointFunction::symmetry_defect(double a, double b) const {
    double g1 = eval(a, b).g_ab, g2 = eval(b, a).g_ab;
    return std::fabs(g1 - g2) / g1;
}

double TwoPointFunction::boundary_defect(double b_max) const {
    std::vector<double> d(f_.size(), 0.0);
    parallel_for(f_.size(), [&](std::size_t i) {
        double b = f_.nodes[i];
        if (b > b_max) return;
        d[i] = std::fabs(eval(0.0, b).g_ab * std::exp(-f_.values[i]) - 1.0);
    });
    double m = 0.0;
    for (double v : d) m = std::max(m, v);
    return m;
}

}  // namespace cfp
