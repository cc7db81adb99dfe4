#pragma once

#include <cstddef>

#include "cfp/coupling.hpp"

namespace cfp {

struct CauchyResult {
    double numeric = 0.0;
    double closed_form = 0.0;  // 1/(u(u+1))
};

// int_0^inf dq / (pi^2 + (u(1+q) - log q)^2) by quadrature in s = log q.
CauchyResult cauchy_integral(double u);

struct T0Result {
    double computed = 0.0;
    double formula = 0.0;
};

// T applied to f = 0 with hard cutoff lambda2 (direct arctan form at b) against
// -log(1 + b/(1+|l| lambda2)).
T0Result t0_check(double b, const Coupling& c, double lambda2, int n_nodes = 800);
// (T0)'(b) against -1/(|l| lambda2 + 1 + b)
T0Result t0_prime_check(double b, const Coupling& c, double lambda2, int n_nodes = 800);

struct T0GridResult {
    double lambda2 = 0.0;
    double worst_value_error = 0.0;  // cumulative T0 vs closed form over all nodes
    double worst_value_b = 0.0;
    double worst_deriv_error = 0.0;
    double worst_deriv_b = 0.0;
    std::size_t nodes = 0;
};

T0GridResult t0_check_grid(const Coupling& c, double lambda2, int n_nodes = 800);

}  // namespace cfp
