#include "cfp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

#include "cfp/errors.hpp"
#include "cfp/grid.hpp"
#include "cfp/quadrature.hpp"
#include "cfp/specfun.hpp"

namespace cfp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

}  // namespace

double f_bound(double a) {
    if (a < 0.0) throw DomainError("F: a must be >= 0");
    if (a == 0.0) return 0.0;
    const double q = std::pow(1.0 + a, 0.25);
    const double h = hyp2f1(1.0, 1.25, 2.25, 1.0 / (1.0 + a));
    return (4.0 + a) / q - 4.0 + (0.5 * a - 4.0 * a / (5.0 * (1.0 + a)) * h) / q;
}

double f_bound_prime(double a) {
    if (a < 0.0) throw DomainError("F': a must be >= 0");
    if (a == 0.0) return -INFINITY;
    const double z = 1.0 / (1.0 + a);
    const double h1 = hyp2f1(2.0, 1.25, 3.25, z);
    const double h2 = hyp2f1(1.0, 1.25, 2.25, z);
    return (0.5 + 9.0 * a / 8.0 - 16.0 / (45.0 * (1.0 + a)) * h1 + a / (5.0 * (1.0 + a)) * h2) /
           std::pow(1.0 + a, 1.25);
}

double f_bound_second(double a) {
    if (a < 0.0) throw DomainError("F'': a must be >= 0");
    if (a == 0.0) return INFINITY;
    const double z = 1.0 / (1.0 + a);
    const double h1 = hyp2f1(2.0, 1.25, 3.25, z);
    const double h2 = hyp2f1(2.0, 1.25, 4.25, z);
    const double h3 = hyp2f1(1.0, 1.25, 3.25, z);
    return ((16.0 - 9.0 * a) / 32.0 + (8.0 - a) / (9.0 * (1.0 + a)) * h1 +
            32.0 / (117.0 * a * (1.0 + a)) * h2 - 5.0 * a / (36.0 * (1.0 + a)) * h3) /
           std::pow(1.0 + a, 2.25);
}

namespace {

void check_lr(double r) {
    if (!(r > 0.0 && r < 0.5)) throw DomainError("F-hat: lambda_r must lie in (0, 1/2)");
}

}  // namespace

double fhat(double r, double a) {
    check_lr(r);
    if (a < 0.0) throw DomainError("F-hat: a must be >= 0");
    if (a == 0.0) return 0.0;
    return (1.0 - 2.0 * r) * a -
           a / ((1.0 + r) * (1.0 + a)) * hyp2f1(1.0, 1.0 + r, 2.0 + r, 1.0 / (1.0 + a));
}

double fhat_prime(double r, double a) {
    check_lr(r);
    if (a == 0.0) return -INFINITY;
    return 1.0 - 2.0 * r -
           hyp2f1(2.0, 1.0 + r, 3.0 + r, 1.0 / (1.0 + a)) / ((1.0 + a) * (1.0 + a) * (1.0 + r) * (2.0 + r));
}

double fhat_second(double r, double a) {
    check_lr(r);
    if (a == 0.0) return INFINITY;
    return 2.0 * hyp2f1(2.0, r, 3.0 + r, 1.0 / (1.0 + a)) /
           (a * (1.0 + a) * (1.0 + a) * (1.0 + r) * (2.0 + r));
}

const FAnchors& f_anchors() {
    static const FAnchors k{f_bound(0.2), f_bound_prime(0.2), f_bound(1.5), f_bound_prime(1.5),
                            f_bound(6.0)};
    return k;
}

double s_bound(double a) {
    if (a < 0.0) throw DomainError("S: a must be >= 0");
    const FAnchors& k = f_anchors();
    auto first = [&](double x) { return k.f5 + (x - 0.2) * k.d5; };
    auto second = [&](double x) { return k.f32 + (x - 1.5) * k.d32; };
    if (a < 0.5) return first(a);
    if (a == 0.5) return std::min(first(a), second(a));
    if (a < 6.0) return second(a);
    return k.f6;
}

DeltaConstants DeltaConstants::make(const Coupling& c) {
    const FAnchors& k = f_anchors();
    DeltaConstants d;
    d.delta = {(k.f5 + 0.3 * k.d5) / kPi,  (k.f5 - 0.2 * k.d5) / kPi,  (k.f32 - k.d32) / kPi,
               (k.f32 - 1.5 * k.d32) / kPi, (k.f32 + 4.5 * k.d32) / kPi, k.f6 / kPi};
    if (!(d.delta[1] > d.delta[0])) throw std::logic_error("delta_2 > delta_1 violated");
    d.abs_lambda = c.abs;
    d.gamma_cot = c.is_zero() ? INFINITY : 1.0 / std::tan(c.lambda_r * kPi);
    return d;
}

double DeltaConstants::beta_of_b(double b) const { return (b + 1.0) / (abs_lambda * kPi); }

double upper_bound_master(double b, const Coupling& c) {
    if (b < 0.0) throw DomainError("upper_bound_master: b must be >= 0");
    if (c.is_zero()) return 0.0;
    const FAnchors& k = f_anchors();
    const double l = c.abs, r = c.lambda_r, B = b + 1.0;
    // |l| pi cot(l_r pi), finite as l -> 0
    const double lpg = (1.0 - 2.0 * l) * xcotx(r * kPi);
    const double lp = l * kPi;

    double t1 = std::atan(0.5 * lp / (B + l * k.f5 + 0.3 * l * k.d5 + 0.5 * lpg)) /
                (kPi * (B + l * k.f5 - 0.2 * l * k.d5));
    double t2 = -std::atan(0.5 * lp / (B + l * k.f32 - l * k.d32 + 0.5 * lpg)) /
                (kPi * (B + l * k.f32 - 1.5 * l * k.d32));
    double t3 = std::atan(6.0 * lp / (B + l * k.f32 + 4.5 * l * k.d32 + 6.0 * lpg)) /
                (kPi * (B + l * k.f32 - 1.5 * l * k.d32));
    double t4 = -std::atan(6.0 * lp / (B + l * k.f6 + 6.0 * lpg)) / (kPi * (B + l * k.f6));
    return t1 + t2 + t3 + t4 + r / (B + l * k.f6) - r / B;
}

std::array<double, 5> c_coeffs_printed(const Coupling& c) {
    if (c.is_zero()) throw DomainError("c_coeffs_printed: singular at lambda = 0");
    const double l = c.abs, r = c.lambda_r;
    const double g = 1.0 / std::tan(r * kPi);
    const double g2 = g * g, g3 = g2 * g, g4 = g3 * g;
    const double q = r * g - 0.25;
    const double l2 = l * l, l3 = l2 * l, l4 = l3 * l;

    double c18 = -3.53 * r;
    double c17 = -29.01 * r - 183.74 * r * g - (20.25 * r - 7.75 * l) / l;
    double c16 = -101.11 * r - 1318.89 * r * g - 4264.94 * r * g2 - (54.78 * r - 41.92 * l) / l2 -
                 (156.99 * r - 56.11 * l) / l - (994.28 * r - 355.99 * l) / l * g;
    double c15 = -426.99 * q / l2 - 191.62 * r - 3914.61 * r * g - 26296.4 * r * g2 - r * g3 -
                 92.992 * r / l3 - (399.76 * r - 285.75 * l) / l2 -
                 (2104.91 * r - 1813.03 * l) / l2 * g - (514.93 * r - 74.85 * l) / l -
                 (6717.04 * r - 2214.36 * l) / l * g - (21721.1 * r - 7195.88 * l) / l * g2;
    double c14 = -5405.0 * q - 2729.0 * q / (r * r) - 679.6 * q / (r * r * r) - 17313.0 * q / l2 * g -
                 207.1 * r - 651.1 * r * g - 64754.0 * r * g2 - 301494.0 * r * g3 -
                 517659.0 * r * g4 - 111.0 * r / l4 - 636.239 * r / l3 - 3350.0 * r / l3 * g -
                 (1229.0 * r - 357.4 * l) / l2 - 914.9 * r / l -
                 (13307.0 * r - 10573.0 * l) / l2 * g - (34542.0 * r - 34358.0 * l) / l2 * g2 -
                 (18691.0 * r - 2338.0 * l) / l * g - (125556.0 * r - 37587.0 * l) / l * g2 -
                 (277886.0 * r - 84001.0 * l) / l * g3;
    return {c14, c15, c16, c17, c18};
}

std::array<double, 3> delta_r_bounds(double t, double delta, const Coupling& c) {
    if (t < 0.0 || delta < 0.0) throw DomainError("delta_r_bounds: t and delta must be >= 0");
    const double l = c.abs;
    const double lg = std::log1p(t);
    const double r1 = delta * std::pow(1.0 + t, 1.0 - l) * lg;
    const double r2 = delta * l * kPi * t * zeta_lambda(c);
    // ((1+t)^l - 1 - l log(1+t)) / l = l log^2(1+t) phi2(l log(1+t))
    const double r3 = delta * t * l * lg * lg * phi2(l * lg) / std::pow(1.0 + t, l);
    return {r1, r2, r3};
}

double continuity_constant(const Coupling& c) {
    const double l = c.abs, r = c.lambda_r;
    const double x = r * kPi;
    // sin(l_r pi)/(|l| pi) = sinc(l_r pi)/(1 - 2|l|)
    const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    const double ratio = sinc / (1.0 - 2.0 * l);
    return ratio * ratio / (1.0 - l / 5.0) / std::cos(x) *
           (1.0 + (1.0 + l) / kE + l * l * kPi * zeta_lambda(c));
}

double hilbert_quotient_modulus(double a, double delta, const Coupling& c) {
    if (a < 0.0 || delta < 0.0) throw DomainError("hilbert_quotient_modulus: a, delta must be >= 0");
    const double l = c.abs;
    const double lg = std::log1p(a);
    return delta * (zeta_lambda(c) + lg * lg * phi2(l * lg) / (kPi * std::pow(1.0 + a, l)));
}

namespace {

double c_aux_raw(double x, double l) {
    const double xl = std::pow(x, l);
    const double lg = l * std::log(x);
    return (-l * l + l * (1.0 - 2.0 * l) * (x - 1.0)) / (xl * (x - 1.0)) +
           (x * x - (1.0 - l) * x) / ((x - 1.0) * (x - 1.0)) * lg / xl;
}

}  // namespace

double c_aux(double x, const Coupling& c) {
    if (!(x > 0.0)) throw DomainError("c_aux: x must be positive");
    if (c.is_zero()) return 0.0;
    constexpr double h = 1e-5;
    if (std::fabs(x - 1.0) < h) return 0.5 * (c_aux_raw(1.0 - h, c.abs) + c_aux_raw(1.0 + h, c.abs));
    return c_aux_raw(x, c.abs);
}

double log2_integral_2(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    const double e = alpha - 1.0;
    if (std::fabs(e) < 0.05) {
        double s = 0.0, p = 1.0;
        for (int n = 0; n < 30; ++n, p *= -e) s += 2.0 * p / ((n + 1.0) * (n + 1.0));
        return s;
    }
    if (alpha < 1.0) return 2.0 * dilog(1.0 - alpha) / (1.0 - alpha);
    const double lg = std::log(alpha);
    return (lg * lg + 2.0 * dilog(1.0 - 1.0 / alpha)) / (alpha - 1.0);
}

double log2_integral_3(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    const double e = alpha - 1.0;
    if (std::fabs(e) < 0.05) {
        double s = 0.0, p = 1.0;
        for (int n = 0; n < 30; ++n, p *= -e) s += p * (n + 1.0) / ((n + 2.0) * (n + 2.0));
        return s;
    }
    if (alpha < 1.0) return (-std::log(alpha) - dilog(1.0 - alpha)) / (e * e);
    const double lg = std::log(alpha);
    return (0.5 * lg * lg - lg + dilog(1.0 - 1.0 / alpha)) / (e * e);
}

namespace {

// alpha J2 and alpha^2 J3 as functions of s = log alpha, finite for huge alpha
struct ScaledJ {
    double j2a;    // alpha J2
    double j3aa;   // alpha^2 J3
};

ScaledJ scaled_j(double s) {
    if (std::fabs(s) < 0.04 || s < 0.0) {
        double a = std::exp(s);
        return {a * log2_integral_2(a), a * a * log2_integral_3(a)};
    }
    const double om = -std::expm1(-s);  // 1 - 1/alpha
    const double li = dilog(om);
    return {(s * s + 2.0 * li) / om, (0.5 * s * s - s + li) / (om * om)};
}

}  // namespace

double c_tilde_xi_form(double alpha, const Coupling& c) {
    if (!(alpha > 0.0)) throw DomainError("c_tilde: alpha must be positive");
    return c_tilde_xi_form_log(std::log(alpha), c);
}

double c_tilde_xi_form_log(double s, const Coupling& c) {
    const double l = c.abs;
    if (l == 0.0) return 0.0;
    const GaussRule& g = gauss_rule(16);
    double a1 = 0.0, a2 = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        double xi = 0.5 * (1.0 + g.x[k]), w = 0.5 * g.w[k];
        double u = 1.0 - xi;
        double e = std::exp(-u * l * s);  // alpha^{-(1-xi)|l|}
        a1 += w * u * e * (1.0 - l * u);
        a2 += w * u * (2.0 * l * u - 1.0) * e;
    }
    const ScaledJ j = scaled_j(s);
    const double j3a = std::exp(-s) * j.j3aa;
    return 2.0 * l * l * (a1 * (j.j2a + j3a) + a2 * j.j3aa);
}

double c_tilde_aux(double alpha, const Coupling& c) {
    if (!(alpha > 0.0)) throw DomainError("c_tilde: alpha must be positive");
    return c_tilde_aux_log(std::log(alpha), c);
}

double c_tilde_aux_log(double s, const Coupling& c) {
    const double l = c.abs;
    if (l == 0.0) return 0.0;
    const double L = l * s;  // log alpha^|l|
    if (std::fabs(std::expm1(s)) < 1e-2 || std::fabs(L) < 0.05) return c_tilde_xi_form_log(s, c);

    const double ix = std::exp(-L);  // alpha^-|l|
    const double om = -std::expm1(-s);  // 1 - 1/alpha
    const double P = 1.0 + 2.0 * l * l * dilog(om) / (L * L);
    const double q1 = 1.0 / (om * om);             // alpha^2/(alpha-1)^2
    const double q2 = std::exp(-s) / (om * om);    // alpha/(alpha-1)^2
    const double t1 = q1 * ((1.0 - ix - L * ix) * P +
                            (-8.0 * l * l * (1.0 - ix) / (L * L) + 2.0 * l * (1.0 - (1.0 - 4.0 * l) * ix) / L -
                             2.0 * l * (1.0 - 2.0 * l) * ix));
    const double t2 = q2 * ((4.0 * l * l * (1.0 - ix) / (L * L) - 2.0 * l * (1.0 - (1.0 - 2.0 * l) * ix) / L +
                             2.0 * l * (1.0 - l) * ix) +
                            (2.0 * l * (1.0 - ix) / L - 1.0 + (1.0 - 2.0 * l) * ix + L * (1.0 - l) * ix) * P);
    return t1 + t2;
}

std::vector<VerificationReport> verify_F_properties(int n) {
    std::vector<VerificationReport> out;
    auto run = [&](const char* id, const char* dom, double lo, double hi,
                   const std::function<double(double)>& margin) {
        auto xs = log_grid(lo, hi, n);
        auto r = scan_min(xs.size(), [&](std::size_t i) { return margin(xs[i]); });
        out.push_back(make_report(id, fmt::format("{} ({} log-spaced points)", dom, xs.size()),
                                  r.worst, {xs[r.index]}, xs.size(), r.violations));
    };
    run("F.1", "F' >= 0 on [1/2, 1e4]", 0.5, 1e4, [](double a) { return f_bound_prime(a); });
    run("F.2", "F'' >= 0 on (0, 9/4]", 1e-6, 2.25, [](double a) { return f_bound_second(a); });
    run("F.3", "F'' <= 0 on [5/2, 1e4]", 2.5, 1e4, [](double a) { return -f_bound_second(a); });
    run("F.4", "|F''| < 1/10 on [9/4, 5/2]", 2.25, 2.5,
        [](double a) { return 0.1 - std::fabs(f_bound_second(a)); });
    run("F.5", "F >= 0 on [4/5, 1e4]", 0.8, 1e4, [](double a) { return f_bound(a); });
    run("F.6", "F >= -1/5 on [0, 1e4]", 0.0, 1e4, [](double a) { return f_bound(a) + 0.2; });
    return out;
}

VerificationReport verify_f_ge_s(int n) {
    auto xs = log_grid(0.0, 1e3, n);
    auto r = scan_min(xs.size(), [&](std::size_t i) { return f_bound(xs[i]) - s_bound(xs[i]); });
    return make_report("F_ge_S", fmt::format("F - S on [0, 1e3] ({} log-spaced points)", xs.size()),
                       r.worst, {xs[r.index]}, xs.size(), r.violations);
}

VerificationReport verify_master(int n_lambda, int n_b) {
    // lambda_i = -(1/6) i/(n_lambda-1), i = 0..n_lambda-1; b on a log grid over [0, 1e4]
    auto bs = log_grid(0.0, 1e4, n_b);
    const std::size_t nb = bs.size();
    const std::size_t total = std::size_t(n_lambda) * nb;
    auto lam = [&](std::size_t i) { return -(1.0 / 6.0) * double(i) / double(n_lambda - 1); };
    // scaled so that the margin is O(1): -U (1+b)^2 / lambda^2; U is exactly 0 at lambda = 0
    auto r = scan_min(total, [&](std::size_t k) {
        Coupling c(lam(k / nb));
        double b = bs[k % nb];
        double u = upper_bound_master(b, c);
        if (c.is_zero()) return u == 0.0 ? INFINITY : -u;
        return -u * (1.0 + b) * (1.0 + b) / (c.abs * c.abs);
    });
    return make_report(
        "master",
        fmt::format("U(b,l) <= 0 on {} lambda x {} b points over [-1/6,0] x [0,1e4]; margin -U(1+b)^2/l^2",
                    n_lambda, nb),
        r.worst, {lam(r.index / nb), bs[r.index % nb]}, total, r.violations);
}

VerificationReport verify_c_coeffs(int n_lambda) {
    // lambda_i = -(1/6) i/n for i = 1..n (the coefficients are singular at 0)
    const std::size_t total = std::size_t(n_lambda) * 5;
    auto lam = [&](std::size_t i) { return -(1.0 / 6.0) * double(i + 1) / double(n_lambda); };
    auto r = scan_min(total, [&](std::size_t k) {
        return -c_coeffs_printed(Coupling(lam(k / 5)))[k % 5];
    });
    return make_report("ck", fmt::format("c_14..c_18 <= 0 on {} lambda points in [-1/6, 0)", n_lambda),
                       r.worst, {lam(r.index / 5), double(14 + r.index % 5)}, total, r.violations);
}

double c_aux_argument_min(const Coupling& c) {
    if (c.is_zero()) return 1.0;
    const double x = c.lambda_r * kPi;
    // h_l sin(x) cos(x) / (|l| pi) with sin(x)/(|l| pi) = sinc(x) / (1 - 2|l|)
    return (1.0 - c.abs / 5.0) * std::sin(x) / x / (1.0 - 2.0 * c.abs) * std::cos(x);
}

VerificationReport verify_c_aux_sup(const Coupling& c, int n) {
    const double smin = std::log(c_aux_argument_min(c));
    const double smax = 4.0 / c.abs;
    auto s = [&](std::size_t i) { return smin + (smax - smin) * double(i) / double(n - 1); };
    const double bound = (1.0 + c.abs) / kE;
    auto r = scan_min(n, [&](std::size_t i) { return bound - c_aux(std::exp(s(i)), c); });
    return make_report(fmt::format("aux.C[{:.6g}]", c.lambda),
                       fmt::format("(1+|l|)/e - C(x), log x in [{:.6g}, 4/|l|]", smin), r.worst,
                       {std::exp(s(r.index))}, n, r.violations);
}

VerificationReport verify_c_tilde_sup(const Coupling& c, int n) {
    // the supremum sits near log alpha ~ 9/|l|, beyond e^{4/|l|}
    const double smax = 60.0 / c.abs;
    auto s = [&](std::size_t i) { return -10.0 + (smax + 10.0) * double(i) / double(n - 1); };
    const double bound = 1.0 + c.abs / 4.0;
    auto r = scan_min(n, [&](std::size_t i) { return bound - c_tilde_aux_log(s(i), c); });
    return make_report(fmt::format("aux.Ctilde[{:.6g}]", c.lambda),
                       fmt::format("1+|l|/4 - Ctilde(alpha), log alpha in [-10, 60/|l|]"), r.worst,
                       {s(r.index)}, n, r.violations);
}

TangentPoint f_tangent_minimum() {
    const double a = 0.2, b = 0.25;
    const double fa = f_bound(a), fb = f_bound(b), da = f_bound_prime(a), db = f_bound_prime(b);
    const double t = (fb - fa + a * da - b * db) / (da - db);
    return {t, f_bound(t)};
}

TangentPoint f_true_minimum() {
    auto res = boost::math::tools::brent_find_minima([](double a) { return f_bound(a); }, 0.05, 0.5, 50);
    return {res.first, res.second};
}

}  // namespace cfp
