#include "cfp/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace cfp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxTerms = 2'000'000;

bool is_nonpositive_int(double x) { return x <= 0.0 && x == std::floor(x); }

double gauss_series(double a, double b, double c, double z) {
    KahanSum s;
    double term = 1.0;
    s.add(term);
    for (int n = 0; n < kMaxTerms; ++n) {
        double ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        term *= ratio;
        s.add(term);
        if (term == 0.0) return s.value();
        if (std::fabs(term) < 1e-17 * std::fabs(s.value()) && std::fabs(ratio) < 1.0)
            return s.value();
    }
    throw std::runtime_error("hyp2f1: Gauss series did not converge");
}

// A&S 15.3.10 / 15.3.11: c = a + b + m, m a nonnegative integer, w = 1 - z small.
double log_case(double a, double b, int m, double z) {
    const double w = 1.0 - z;
    const double lw = std::log(w);
    const double c = a + b + m;

    double finite = 0.0;
    if (m > 0) {
        double pref = std::tgamma(double(m)) * std::tgamma(c) /
                      (std::tgamma(a + m) * std::tgamma(b + m));
        KahanSum s;
        double term = 1.0;
        for (int n = 0; n < m; ++n) {
            s.add(term);
            if (n + 1 < m) term *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n)) * w;
        }
        finite = pref * s.value();
    }

    // psi(n+1), psi(n+m+1), psi(a+n+m), psi(b+n+m) advanced by recurrence
    double p1 = digamma(1.0);
    double pm = digamma(m + 1.0);
    double pa = digamma(a + m);
    double pb = digamma(b + m);
    double coef = 1.0;  // (a+m)_n (b+m)_n / (n! (n+m)!) * w^n, without the 1/m!
    double fact_m = std::tgamma(m + 1.0);
    KahanSum s;
    for (int n = 0; n < kMaxTerms; ++n) {
        double term = coef * (lw - p1 - pm + pa + pb);
        s.add(term);
        if (n > 2 && std::fabs(term) < 1e-17 * std::fabs(s.value())) break;
        coef *= (a + m + n) * (b + m + n) / ((n + 1.0) * (n + m + 1.0)) * w;
        p1 += 1.0 / (n + 1.0);
        pm += 1.0 / (n + m + 1.0);
        pa += 1.0 / (a + m + n);
        pb += 1.0 / (b + m + n);
    }
    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    double pref = std::tgamma(c) / (std::tgamma(a) * std::tgamma(b)) / fact_m;
    return finite - pref * sign * std::pow(w, m) * s.value();
}

}  // namespace

double hyp2f1_1mu(double mu, double z) {
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError("hyp2f1_1mu: mu must lie in (0,1)");
    if (!(z >= 0.0 && z < 1.0)) throw DomainError("hyp2f1_1mu: z must lie in [0,1)");
    if (z <= 0.5) {
        KahanSum s;
        double zk = 1.0;
        for (int k = 0; k < 200; ++k) {
            double term = zk / (mu + k);
            s.add(term);
            if (term < 1e-18 * s.value()) break;
            zk *= z;
        }
        return mu * s.value();
    }
    // zero-balanced expansion around z = 1
    const double w = 1.0 - z;
    const double lw = std::log(w);
    double psi_n1 = digamma(1.0);
    double psi_mun = digamma(mu);
    double coef = 1.0;  // (mu)_n / n! * w^n
    KahanSum s;
    for (int n = 0; n < 400; ++n) {
        double term = coef * (psi_n1 - psi_mun - lw);
        s.add(term);
        if (std::fabs(term) < 1e-18 * std::fabs(s.value())) break;
        coef *= (mu + n) / (n + 1.0) * w;
        psi_n1 += 1.0 / (n + 1.0);
        psi_mun += 1.0 / (mu + n);
    }
    return mu * s.value();
}

double hyp2f1(const HypParams& p) {
    const double a = p.a, b = p.b, c = p.c, z = p.z;
    if (is_nonpositive_int(c)) throw DomainError("hyp2f1: c is a nonpositive integer");
    if (!(z > -1.0 && z < 1.0)) throw DomainError("hyp2f1: z outside (-1,1)");
    if (z == 0.0 || a == 0.0 || b == 0.0) return 1.0;
    if (z <= 0.75 || is_nonpositive_int(a) || is_nonpositive_int(b))
        return gauss_series(a, b, c, z);

    const double m = c - a - b;
    const double mr = std::round(m);
    if (std::fabs(m - mr) < 1e-12) {
        if (mr < 0) {
            // Euler transformation flips the sign of c-a-b
            return std::pow(1.0 - z, m) * hyp2f1(c - a, c - b, c, z);
        }
        return log_case(a, b, int(mr), z);
    }
    if (std::fabs(m - mr) < 1e-4) return gauss_series(a, b, c, z);
    // A&S 15.3.6
    const double w = 1.0 - z;
    double t1 = std::tgamma(c) * std::tgamma(m) / (std::tgamma(c - a) * std::tgamma(c - b));
    double t2 = std::tgamma(c) * std::tgamma(-m) / (std::tgamma(a) * std::tgamma(b));
    return t1 * gauss_series(a, b, 1.0 - m, w) +
           std::pow(w, m) * t2 * gauss_series(c - a, c - b, 1.0 + m, w);
}

double digamma(double x) {
    if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
    KahanSum shift;
    while (x < 12.0) {
        shift.add(1.0 / x);
        x += 1.0;
    }
    const double x2 = 1.0 / (x * x);
    // Bernoulli tail: B_2k / (2k x^2k)
    double series = x2 * (1.0 / 12 - x2 * (1.0 / 120 - x2 * (1.0 / 252 - x2 * (1.0 / 240 -
                    x2 * (1.0 / 132 - x2 * (691.0 / 32760 - x2 / 12))))));
    return std::log(x) - 0.5 / x - series - shift.value();
}

namespace {

double dilog_series(double x) {
    KahanSum s;
    double xk = x;
    for (int k = 1; k < 200; ++k) {
        double term = xk / (double(k) * k);
        s.add(term);
        if (std::fabs(term) < 1e-18) break;
        xk *= x;
    }
    return s.value();
}

}  // namespace

double dilog(double x) {
    constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
    if (!(x <= 1.0)) throw DomainError("dilog: argument must be <= 1");
    if (x == 1.0) return pi2_6;
    if (std::fabs(x) <= 0.5) return dilog_series(x);
    if (x > 0.5) return pi2_6 - std::log(x) * std::log1p(-x) - dilog_series(1.0 - x);
    // Landen: x < -1/2 maps to x/(x-1) in (1/3, 1)
    double l = std::log1p(-x);
    return -dilog(x / (x - 1.0)) - 0.5 * l * l;
}

double zeta_lambda(const Coupling& c) {
    const double l = c.abs;
    const double r = c.lambda_r;
    if (!(r < 1.0)) throw DomainError("zeta_lambda: needs |lambda| < 1/3");
    constexpr int N = 100000;
    KahanSum s;
    for (int k = N - 1; k >= 1; --k) {
        double u = k + l, v = k - r;
        s.add(1.0 / (u * u) + 1.0 / (v * v));
    }
    // Euler-Maclaurin tail sum_{k>=N} 1/(k+q)^2
    auto tail = [](double y) {
        double y2 = y * y;
        return 1.0 / y + 0.5 / y2 + 1.0 / (6.0 * y2 * y) - 1.0 / (30.0 * y2 * y2 * y);
    };
    s.add(tail(N + l));
    s.add(tail(N - r));
    return s.value() / std::numbers::pi;
}

double xcotx(double x) {
    if (std::fabs(x) < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 3.0 - x2 * x2 / 45.0;
    }
    return x / std::tan(x);
}

double phi2(double x) {
    if (std::fabs(x) < 1e-2) {
        return 0.5 + x * (1.0 / 6 + x * (1.0 / 24 + x * (1.0 / 120 + x * (1.0 / 720 + x / 5040))));
    }
    return (std::expm1(x) - x) / (x * x);
}

}  // namespace cfp
