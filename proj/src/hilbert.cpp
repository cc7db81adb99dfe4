#include "cfp/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cfp/errors.hpp"
#include "cfp/quadrature.hpp"
#include "cfp/specfun.hpp"

namespace cfp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kOrder = 8;

void panel_points(const GridFunction& f, std::vector<double>& xs, std::vector<double>& ws) {
    const GaussRule& g = gauss_rule(kOrder);
    xs.clear();
    ws.clear();
    xs.reserve(kOrder * (f.size() - 1));
    ws.reserve(kOrder * (f.size() - 1));
    for (std::size_t i = 0; i + 1 < f.size(); ++i) append_panel(g, f.nodes[i], f.nodes[i + 1], xs, ws);
}

// int_L^inf (1+x)^p/(x-a) dx / (1+L)^p for p < 0, a < L
double power_tail(double p, double a, double L) {
    double z = (1.0 + a) / (1.0 + L);
    double mu = -p;
    double h = mu < 1.0 ? hyp2f1_1mu(mu, z) : hyp2f1(1.0, mu, 1.0 + mu, z);
    return h / mu;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (n_nodes < 64) throw DomainError("n_nodes must be >= 64");
    if (!(lambda2 > 0.0)) throw DomainError("lambda2 must be positive");
    if (!(pv_window > 0.0)) throw DomainError("pv_window must be positive");
    if (t_panels_per_decade < 1 || t_extend_decades < 0.0)
        throw DomainError("invalid t quadrature settings");
}

const char* to_string(TailMode m) { return m == TailMode::power_law ? "power_law" : "hard_cutoff"; }

TailMode tail_mode_from(const std::string& s) {
    if (s == "power_law" || s == "power_law_extend") return TailMode::power_law;
    if (s == "hard_cutoff") return TailMode::hard_cutoff;
    throw DomainError("unknown tail mode: " + s);
}

double hilbert_power_law(double beta, double mu, double a) {
    if (!(beta > 0.0) || !(mu > 0.0 && mu < 1.0) || !(a > 0.0))
        throw DomainError("hilbert_power_law: need beta > 0, 0 < mu < 1, a > 0");
    double z = beta / (beta + a);
    return -1.0 / std::tan(kPi * mu) + std::pow(z, mu) * hyp2f1_1mu(mu, z) / (mu * kPi);
}

ExpHilbert::ExpHilbert(GridFunction f, TailMode mode, double pv_window)
    : f_(std::move(f)), mode_(mode), pv_window_(pv_window) {
    p_ = f_.tail_exponent();
    logc_ = f_.tail_log_scale();
    panel_points(f_, xs_, ws_);
    es_.resize(xs_.size());
    gs_.resize(xs_.size());
    for (std::size_t k = 0; k < xs_.size(); ++k) {
        double v = f_.value_in(k / kOrder, xs_[k]);
        es_[k] = std::exp(v);
        gs_[k] = es_[k] - std::exp(logc_ + p_ * std::log1p(xs_[k]));
    }
}

double ExpHilbert::quotient(double a) const {
    const double L = f_.cutoff();
    if (!(a > 0.0)) throw DomainError("hilbert_of_exp: a must be positive");
    if (a < L) return quotient_inside(a);
    if (mode_ == TailMode::hard_cutoff) throw DomainError("hilbert_of_exp: a must be below the cutoff");
    return quotient_beyond(a);
}

double ExpHilbert::quotient_inside(double a) const {
    const double L = f_.cutoff();
    const std::size_t i = f_.interval(a);
    const double fa = f_.value_in(i, a);
    const double inv = std::exp(-fa);

    const std::size_t k0 = kOrder * i, k1 = k0 + kOrder;
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t k = 0; k < k0; ++k) s0 += ws_[k] * (es_[k] * inv - 1.0) / (xs_[k] - a);
    for (std::size_t k = k1; k < xs_.size(); ++k) s1 += ws_[k] * (es_[k] * inv - 1.0) / (xs_[k] - a);

    const GaussRule& g = gauss_rule(kOrder);
    double sp = 0.0;
    auto piece = [&](double lo, double hi) {
        if (!(hi > lo)) return;
        double h = 0.5 * (hi - lo), m = 0.5 * (hi + lo);
        for (std::size_t k = 0; k < g.size(); ++k) {
            double x = m + h * g.x[k];
            if (x == a) continue;  // sliver of a few ulps, bounded integrand
            sp += h * g.w[k] * std::expm1(f_.value_in(i, x) - fa) / (x - a);
        }
    };
    piece(f_.nodes[i], a);
    piece(a, f_.nodes[i + 1]);

    double total = s0 + s1 + sp + std::log((L - a) / a);
    if (mode_ == TailMode::power_law) {
        if (!(p_ < 0.0)) throw DomainError("hilbert_of_exp: fitted tail exponent must be negative");
        total += std::exp(f_.values.back() - fa) * power_tail(p_, a, L);
    }
    return total / kPi;
}

double ExpHilbert::quotient_beyond(double a) const {
    const double mu = 1.0 + p_;
    if (!(mu > 0.0 && mu < 1.0))
        throw DomainError("hilbert_of_exp: tail exponent outside (-1,0) beyond the cutoff");
    const std::size_t np = f_.size() - 1;

    // panels close to a get graded towards their right end
    std::size_t first_near = np;
    while (first_near > 0) {
        std::size_t j = first_near - 1;
        double h = f_.nodes[j + 1] - f_.nodes[j];
        if (a - f_.nodes[j + 1] < pv_window_ * h) first_near = j;
        else break;
    }
    double s = 0.0;
    for (std::size_t k = 0; k < kOrder * first_near; ++k) s += ws_[k] * gs_[k] / (xs_[k] - a);

    const GaussRule& g = gauss_rule(kOrder);
    std::vector<double> px, pw;
    for (std::size_t j = first_near; j < np; ++j) {
        double lo = f_.nodes[j], hi = f_.nodes[j + 1];
        double d = a - hi;
        int levels = 0;
        if (d > 0.0) levels = std::clamp(int(std::ceil(std::log2((hi - lo) / d))) + 1, 0, 50);
        px.clear();
        pw.clear();
        append_graded(g, lo, hi, hi, levels, px, pw);
        for (std::size_t k = 0; k < px.size(); ++k) {
            double x = px[k];
            double gx = std::exp(f_.value_in(j, x)) - std::exp(logc_ + p_ * std::log1p(x));
            s += pw[k] * gx / (x - a);
        }
    }
    double ca = std::exp(logc_ + p_ * std::log1p(a));
    return hilbert_power_law(1.0, mu, a) + s / (kPi * ca);
}

double hilbert_of_exp(const GridFunction& f, double a, const QuadratureConfig& cfg) {
    return ExpHilbert(f, cfg.tail_mode, cfg.pv_window).quotient(a);
}

SampledHilbert::SampledHilbert(const std::vector<double>& nodes, const std::vector<double>& values)
    : g_(nodes, values, pchip_slopes(nodes, values)) {
    panel_points(g_, xs_, ws_);
    gv_.resize(xs_.size());
    for (std::size_t k = 0; k < xs_.size(); ++k) gv_[k] = g_.value_in(k / kOrder, xs_[k]);
}

double SampledHilbert::at(double a) const {
    const double L = g_.cutoff();
    if (a == 0.0) {
        double s = 0.0;
        for (std::size_t k = 0; k < xs_.size(); ++k) s += ws_[k] * gv_[k] / xs_[k];
        return s / kPi;
    }
    if (!(a > 0.0 && a < L)) throw DomainError("SampledHilbert: a outside [0, L)");
    const std::size_t i = g_.interval(a);
    const double ga = g_.value_in(i, a);
    const std::size_t k0 = kOrder * i, k1 = k0 + kOrder;
    double s = 0.0;
    for (std::size_t k = 0; k < k0; ++k) s += ws_[k] * (gv_[k] - ga) / (xs_[k] - a);
    for (std::size_t k = k1; k < xs_.size(); ++k) s += ws_[k] * (gv_[k] - ga) / (xs_[k] - a);
    const GaussRule& g = gauss_rule(kOrder);
    auto piece = [&](double lo, double hi) {
        if (!(hi > lo)) return;
        double h = 0.5 * (hi - lo), m = 0.5 * (hi + lo);
        for (std::size_t k = 0; k < g.size(); ++k) {
            double x = m + h * g.x[k];
            if (x == a) continue;
            s += h * g.w[k] * (g_.value_in(i, x) - ga) / (x - a);
        }
    };
    piece(g_.nodes[i], a);
    piece(a, g_.nodes[i + 1]);
    return (s + ga * std::log((L - a) / a)) / kPi;
}

}  // namespace cfp
