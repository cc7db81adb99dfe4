#include "cfp/appendix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cfp/errors.hpp"
#include "cfp/grid.hpp"
#include "cfp/hilbert.hpp"
#include "cfp/operators.hpp"

namespace cfp {

namespace {

constexpr double kPi = std::numbers::pi;

QuadratureConfig hard_config(double lambda2, int n_nodes) {
    QuadratureConfig cfg;
    cfg.lambda2 = lambda2;
    cfg.n_nodes = n_nodes;
    cfg.tail_mode = TailMode::hard_cutoff;
    // b + R0 is negative on most of [0, L]; the integrand itself stays regular
    cfg.pole_guard = false;
    cfg.validate();
    return cfg;
}

}  // namespace

CauchyResult cauchy_integral(double u) {
    if (!(u > 0.0)) throw DomainError("cauchy_integral: u must be positive");
    // q = e^s; the denominator u(1+e^s) - s is smallest at s* = -log u
    auto g = [u](double s) {
        double d = u * (1.0 + std::exp(s)) - s;
        return std::exp(s) / (kPi * kPi + d * d);
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    auto panel = [&](double lo, double hi) {
        double err = 0.0;
        double v = GK::integrate(g, lo, hi, 15, 1e-14, &err);
        if (!(err <= 1e-12 * std::max(1.0, std::fabs(v)))) throw QuadratureError("cauchy_integral: panel did not converge");
        return v;
    };
    const double s_star = -std::log(u);
    const double lo = std::min(0.0, s_star), hi = std::max(0.0, s_star);
    double total = 0.0;
    // unit panels between the two break points
    int m = std::max(1, int(std::ceil(hi - lo)));
    for (int k = 0; k < m; ++k) total += panel(lo + (hi - lo) * k / m, lo + (hi - lo) * (k + 1) / m);
    // doubling panels outward until the contribution is negligible
    for (int dir : {-1, 1}) {
        double a = dir < 0 ? lo : hi, w = 1.0;
        for (int k = 0; k < 200; ++k) {
            double b = a + dir * w;
            double v = dir < 0 ? panel(b, a) : panel(a, b);
            total += v;
            if (std::fabs(v) < 1e-18 * std::fabs(total) && k > 3) break;
            if (k == 199) throw QuadratureError("cauchy_integral: tail did not decay");
            a = b;
            w *= 2.0;
        }
    }
    return {total, 1.0 / (u * (u + 1.0))};
}

T0Result t0_check(double b, const Coupling& c, double lambda2, int n_nodes) {
    auto cfg = hard_config(lambda2, n_nodes);
    if (!(b >= 0.0 && b <= lambda2)) throw DomainError("t0_check: b outside [0, lambda2]");
    TransformContext ctx(zero_function(make_nodes(lambda2, n_nodes)), c, cfg);
    return {ctx.t_direct(b), -std::log1p(b / (1.0 + c.abs * lambda2))};
}

T0Result t0_prime_check(double b, const Coupling& c, double lambda2, int n_nodes) {
    auto cfg = hard_config(lambda2, n_nodes);
    TransformContext ctx(zero_function(make_nodes(lambda2, n_nodes)), c, cfg);
    return {ctx.t_prime(b), -1.0 / (c.abs * lambda2 + 1.0 + b)};
}

T0GridResult t0_check_grid(const Coupling& c, double lambda2, int n_nodes) {
    auto cfg = hard_config(lambda2, n_nodes);
    auto nodes = make_nodes(lambda2, n_nodes);
    auto g = TransformContext(zero_function(nodes), c, cfg).t_op();
    T0GridResult r;
    r.lambda2 = lambda2;
    r.nodes = nodes.size();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        double b = nodes[i];
        double ev = std::fabs(g.values[i] + std::log1p(b / (1.0 + c.abs * lambda2)));
        double ed = std::fabs(g.derivs[i] + 1.0 / (c.abs * lambda2 + 1.0 + b));
        if (ev > r.worst_value_error) {
            r.worst_value_error = ev;
            r.worst_value_b = b;
        }
        if (ed > r.worst_deriv_error) {
            r.worst_deriv_error = ed;
            r.worst_deriv_b = b;
        }
    }
    return r;
}

}  // namespace cfp
