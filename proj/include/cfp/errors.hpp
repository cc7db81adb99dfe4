#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfp {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// b + Rf(t) <= 0 somewhere on the t grid.
struct PoleError : std::runtime_error {
    double t;
    double value;
    PoleError(double t_, double v_)
        : std::runtime_error("integrand pole: b+Rf(t)=" + std::to_string(v_) +
                             " at t=" + std::to_string(t_)),
          t(t_), value(v_) {}
};

struct NonConvergence : std::runtime_error {
    int iterations;
    double last_distance;
    NonConvergence(int it, double d)
        : std::runtime_error("no convergence after " + std::to_string(it) +
                             " iterations, last distance " + std::to_string(d)),
          iterations(it), last_distance(d) {}
};

struct EnvelopeEscape : std::runtime_error {
    std::size_t node;
    double x;
    double margin;
    EnvelopeEscape(std::size_t n, double x_, double m)
        : std::runtime_error("iterate left the envelope at x=" + std::to_string(x_) +
                             " (margin " + std::to_string(m) + ")"),
          node(n), x(x_), margin(m) {}
};

}  // namespace cfp
