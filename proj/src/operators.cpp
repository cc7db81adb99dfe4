#include "cfp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cfp/errors.hpp"
#include "cfp/quadrature.hpp"

namespace cfp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kHeadLevels = 24;    // grading towards t = 0 (Rf has a t log t term)
constexpr int kCutoffLevels = 30;  // hard cutoff: log singularity of Rf at L
constexpr int kKinkLevels = 10;    // power-law mode: derivative kink of e^f at L

}  // namespace

TransformContext::TransformContext(const GridFunction& f, const Coupling& c,
                                   const QuadratureConfig& cfg)
    : c_(c), cfg_(cfg), h_(f, cfg.tail_mode, cfg.pv_window) {
    const GaussRule& g = gauss_rule(8);
    const auto& x = f.nodes;
    const std::size_t n = x.size();
    const double L = x.back();
    const bool power = cfg.tail_mode == TailMode::power_law;

    append_graded(g, 0.0, x[1], 0.0, kHeadLevels, ts_, wts_);
    for (std::size_t i = 1; i + 2 < n; ++i) append_panel(g, x[i], x[i + 1], ts_, wts_);
    if (n > 2) append_graded(g, x[n - 2], L, L, power ? kKinkLevels : kCutoffLevels, ts_, wts_);

    t_end_ = L;
    if (power && !c_.is_zero()) {
        int np = std::max(1, int(std::ceil(cfg.t_extend_decades * cfg.t_panels_per_decade)));
        const double r = std::pow(10.0, cfg.t_extend_decades / np);
        double lo = L;
        for (int k = 0; k < np; ++k) {
            double hi = (k == np - 1) ? L * std::pow(10.0, cfg.t_extend_decades) : lo * r;
            if (k == 0) append_graded(g, lo, hi, lo, kKinkLevels, ts_, wts_);
            else append_panel(g, lo, hi, ts_, wts_);
            lo = hi;
        }
        t_end_ = lo;
        has_tail_ = true;
    }

    rfs_.resize(ts_.size());
    at2_.resize(ts_.size());
    parallel_for(ts_.size(), [&](std::size_t k) {
        rfs_[k] = rf(ts_[k]);
        double at = c_.alpha() * ts_[k];
        at2_[k] = at * at;
    });
    min_rf_ = INFINITY;
    for (std::size_t k = 0; k < rfs_.size(); ++k) {
        if (rfs_[k] < min_rf_) {
            min_rf_ = rfs_[k];
            min_rf_t_ = ts_[k];
        }
    }
    if (has_tail_) slope_ = (rf(t_end_) - 1.0) / t_end_;
}

double TransformContext::rf(double t) const {
    if (t == 0.0) return 1.0;
    const GridFunction& f = h_.function();
    double e = std::exp(-f.value(t));
    if (c_.is_zero()) return e;
    return e - c_.alpha() * t * h_.quotient(t);
}

void TransformContext::check_pole(double b) const {
    if (cfg_.pole_guard && !c_.is_zero() && !(b + min_rf_ > 0.0))
        throw PoleError(min_rf_t_, b + min_rf_);
}

double TransformContext::t_prime(double b) const {
    if (c_.is_zero()) return -1.0 / (1.0 + b);
    check_pole(b);
    double s = 0.0;
    for (std::size_t k = 0; k < ts_.size(); ++k) {
        double d = b + rfs_[k];
        s += wts_[k] / (at2_[k] + d * d);
    }
    if (has_tail_) {
        // int_T^inf dt / ((alpha t)^2 + (beta + gamma t)^2), beta = 1 + b
        const double al = c_.alpha(), be = 1.0 + b, ga = slope_;
        s += (std::atan2(al, ga) - std::atan2(al * t_end_, be + ga * t_end_)) / (al * be);
    }
    return -1.0 / (1.0 + b) + c_.abs * s;
}

double TransformContext::t_direct(double b) const {
    if (c_.is_zero()) return -std::log1p(b);
    check_pole(b);
    const double al = c_.alpha();
    // arctan((b+R)/(al t)) - arctan(R/(al t)) written as a single atan2
    auto kernel = [&](double t, double r) {
        double at = al * t;
        return std::atan2(b * at, at * at + (b + r) * r) / (kPi * t);
    };
    double s = 0.0;
    for (std::size_t k = 0; k < ts_.size(); ++k) s += wts_[k] * kernel(ts_[k], rfs_[k]);
    if (has_tail_) {
        const GaussRule& g = gauss_rule(8);
        std::vector<double> xs, ws;
        constexpr int decades = 8, per = 8;
        double lo = t_end_;
        const double r = std::pow(10.0, 1.0 / per);
        for (int k = 0; k < decades * per; ++k) {
            append_panel(g, lo, lo * r, xs, ws);
            lo *= r;
        }
        for (std::size_t k = 0; k < xs.size(); ++k) s += ws[k] * kernel(xs[k], 1.0 + slope_ * xs[k]);
        // leading 1/t^2 decay beyond
        s += b * al / (kPi * (al * al + slope_ * slope_) * lo);
    }
    return -std::log1p(b) + s;
}

OperatorOutput TransformContext::t_op_full() const {
    const GridFunction& f = h_.function();
    const auto& x = f.nodes;
    const std::size_t n = x.size();
    check_pole(0.0);
    std::vector<double> d(n), inc(n, 0.0);
    const GaussRule& g = gauss_rule(4);
    parallel_for(n, [&](std::size_t i) {
        d[i] = t_prime(x[i]);
        if (i + 1 < n) {
            double h = 0.5 * (x[i + 1] - x[i]), m = 0.5 * (x[i + 1] + x[i]);
            double s = 0.0;
            for (std::size_t k = 0; k < g.size(); ++k) s += g.w[k] * t_prime(m + h * g.x[k]);
            inc[i + 1] = h * s;
        }
    });
    std::vector<double> v(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) v[i] = v[i - 1] + inc[i];
    return {GridFunction(x, std::move(v), std::move(d)), ts_, rfs_};
}

GridFunction TransformContext::t_op() const { return t_op_full().grid; }

double r_op(const GridFunction& f, double a, const Coupling& c, const QuadratureConfig& cfg) {
    if (a == 0.0) return 1.0;
    if (a < 0.0) throw DomainError("r_op: a must be >= 0");
    double e = std::exp(-f.value(a));
    if (c.is_zero()) return e;
    return e - c.alpha() * a * hilbert_of_exp(f, a, cfg);
}

double t_prime(const GridFunction& f, double b, const Coupling& c, const QuadratureConfig& cfg) {
    return TransformContext(f, c, cfg).t_prime(b);
}

GridFunction t_op(const GridFunction& f, const Coupling& c, const QuadratureConfig& cfg) {
    return TransformContext(f, c, cfg).t_op();
}

double lb_norm(const GridFunction& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::fabs((1.0 + f.nodes[i]) * f.derivs[i]));
    return std::fabs(f.values[0]) + m;
}

double lb_distance(const GridFunction& f, const GridFunction& g) {
    if (f.nodes != g.nodes) throw std::invalid_argument("lb_distance: different grids");
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        m = std::max(m, std::fabs((1.0 + f.nodes[i]) * (f.derivs[i] - g.derivs[i])));
    return std::fabs(f.values[0] - g.values[0]) + m;
}

}  // namespace cfp
