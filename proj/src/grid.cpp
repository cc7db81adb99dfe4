#include "cfp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cfp/errors.hpp"
#include "cfp/quadrature.hpp"

namespace cfp {

GridFunction::GridFunction(std::vector<double> x, std::vector<double> v, std::vector<double> d)
    : nodes(std::move(x)), values(std::move(v)), derivs(std::move(d)) {
    prepare();
}

void GridFunction::prepare() {
    const std::size_t n = nodes.size();
    if (n < 2 || values.size() != n || derivs.size() != n)
        throw std::invalid_argument("GridFunction: inconsistent sizes");
    if (nodes[0] != 0.0) throw std::invalid_argument("GridFunction: first node must be 0");
    for (std::size_t i = 1; i < n; ++i)
        if (!(nodes[i] > nodes[i - 1]))
            throw std::invalid_argument("GridFunction: nodes must increase");

    dl_.assign(n - 1, 0.0);
    dr_.assign(n - 1, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double delta = (values[i + 1] - values[i]) / (nodes[i + 1] - nodes[i]);
        double d0 = derivs[i], d1 = derivs[i + 1];
        if (delta == 0.0) {
            d0 = d1 = 0.0;
        } else {
            double a = d0 / delta, b = d1 / delta;
            if (a < 0.0) d0 = 0.0, a = 0.0;
            if (b < 0.0) d1 = 0.0, b = 0.0;
            double s = a * a + b * b;
            if (s > 9.0) {
                double tau = 3.0 / std::sqrt(s);
                d0 = tau * a * delta;
                d1 = tau * b * delta;
            }
        }
        dl_[i] = d0;
        dr_[i] = d1;
    }

    const double L = nodes.back();
    double xm = L / 10.0;
    if (xm <= nodes[1]) xm = nodes[n / 2];
    double fm = value(xm);
    tail_p_ = (values.back() - fm) / (std::log1p(L) - std::log1p(xm));
    tail_logc_ = values.back() - tail_p_ * std::log1p(L);
}

std::size_t GridFunction::interval(double x) const {
    auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    std::size_t i = it == nodes.begin() ? 0 : std::size_t(it - nodes.begin()) - 1;
    return std::min(i, nodes.size() - 2);
}

double GridFunction::value(double x) const {
    if (x > nodes.back()) return tail_logc_ + tail_p_ * std::log1p(x);
    return value_in(interval(x), x);
}

double GridFunction::value_in(std::size_t i, double x) const {
    double h = nodes[i + 1] - nodes[i];
    double t = (x - nodes[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * values[i] + (t3 - 2 * t2 + t) * h * dl_[i] +
           (-2 * t3 + 3 * t2) * values[i + 1] + (t3 - t2) * h * dr_[i];
}

double GridFunction::deriv(double x) const {
    if (x > nodes.back()) return tail_p_ / (1.0 + x);
    std::size_t i = interval(x);
    double h = nodes[i + 1] - nodes[i];
    double t = (x - nodes[i]) / h;
    double t2 = t * t;
    return (6 * t2 - 6 * t) / h * values[i] + (3 * t2 - 4 * t + 1) * dl_[i] +
           (-6 * t2 + 6 * t) / h * values[i + 1] + (3 * t2 - 2 * t) * dr_[i];
}

std::vector<double> make_nodes(double lambda2, int n_nodes, int n_linear) {
    if (!(lambda2 > 0.0)) throw DomainError("make_nodes: cutoff must be positive");
    if (n_nodes < n_linear + 2) throw DomainError("make_nodes: too few nodes");
    std::vector<double> x;
    x.reserve(n_nodes);
    if (lambda2 <= 1.0) {
        for (int i = 0; i < n_nodes; ++i) x.push_back(lambda2 * i / (n_nodes - 1));
        return x;
    }
    for (int i = 0; i < n_linear; ++i) x.push_back(double(i) / (n_linear - 1));
    const int m = n_nodes - n_linear;  // log nodes after 1
    const double lr = std::log(lambda2);
    for (int i = 1; i <= m; ++i) x.push_back(std::exp(lr * i / m));
    x.back() = lambda2;
    return x;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> x;
    x.reserve(n);
    if (lo == 0.0) {
        x.push_back(0.0);
        lo = hi * 1e-8;
        --n;
    }
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) x.push_back(std::exp(a + (b - a) * i / std::max(1, n - 1)));
    if (n > 1) x.back() = hi;
    return x;
}

GridFunction grid_from(const std::vector<double>& nodes, const std::function<double(double)>& f,
                       const std::function<double(double)>& fp) {
    std::vector<double> v(nodes.size()), d(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        v[i] = f(nodes[i]);
        d[i] = fp(nodes[i]);
    }
    return GridFunction(nodes, std::move(v), std::move(d));
}

GridFunction log_power(const std::vector<double>& nodes, double p) {
    return grid_from(
        nodes, [p](double x) { return p * std::log1p(x); },
        [p](double x) { return p / (1.0 + x); });
}

GridFunction zero_function(const std::vector<double>& nodes) {
    return GridFunction(nodes, std::vector<double>(nodes.size(), 0.0),
                        std::vector<double>(nodes.size(), 0.0));
}

GridFunction random_k_lambda(const Coupling& c, const std::vector<double>& nodes,
                             std::mt19937_64& rng) {
    const double smax = std::log2(1.0 + nodes.back());
    const int nb = int(std::ceil(smax)) + 2;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<double> theta(nb);
    for (auto& t : theta) {
        double r = u01(rng);
        t = r < 0.2 ? 0.0 : (r < 0.4 ? 1.0 : u01(rng));
    }
    constexpr double width = 0.3;  // smoothing width in log2(1+x)
    auto th = [&](double s) {
        int k = std::clamp(int(std::floor(s)), 0, nb - 1);
        double base = theta[k];
        double frac = s - k;
        if (frac > 1.0 - width / 2 && k + 1 < nb) {
            double q = (frac - (1.0 - width / 2)) / width;
            return base + (theta[k + 1] - base) * q * q * (3 - 2 * q);
        }
        if (frac < width / 2 && k > 0) {
            double q = (frac + width / 2) / width;
            double prev = theta[k - 1];
            return prev + (base - prev) * q * q * (3 - 2 * q);
        }
        return base;
    };
    const double lo = -(1.0 - c.abs), hi = -(1.0 - c.lambda_r);
    auto prof = [&](double sigma) {  // (1+x) f'(x) with sigma = ln(1+x)
        double t = th(sigma / std::log(2.0));
        return lo * t + hi * (1.0 - t);
    };

    const GaussRule& g = gauss_rule(8);
    const std::size_t n = nodes.size();
    std::vector<double> v(n, 0.0), d(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double si = std::log1p(nodes[i]);
        if (i > 0) {
            double s0 = std::log1p(nodes[i - 1]);
            double h = 0.5 * (si - s0), m = 0.5 * (si + s0);
            for (std::size_t k = 0; k < g.size(); ++k) acc += h * g.w[k] * prof(m + h * g.x[k]);
        }
        v[i] = acc;
        d[i] = prof(si) / (1.0 + nodes[i]);
    }
    return GridFunction(nodes, std::move(v), std::move(d));
}

std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    std::vector<double> h(n - 1), del(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        del[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        d[0] = d[1] = del[0];
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (del[i - 1] * del[i] <= 0.0) continue;
        double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
        d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double s = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0) return 0.0;
        if (d0 * d1 <= 0.0 && std::fabs(s) > std::fabs(3 * d0)) return 3 * d0;
        return s;
    };
    d[0] = endpoint(h[0], h[1], del[0], del[1]);
    d[n - 1] = endpoint(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
    return d;
}

double envelope_margin(const GridFunction& f, const Coupling& c, std::size_t* where) {
    const double lo = -(1.0 - c.abs), hi = -(1.0 - c.lambda_r);
    double worst = INFINITY;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double s = (1.0 + f.nodes[i]) * f.derivs[i];
        double m = std::min(s - lo, hi - s);
        if (m < worst) {
            worst = m;
            if (where) *where = i;
        }
    }
    return worst;
}

}  // namespace cfp
