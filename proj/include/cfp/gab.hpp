#pragma once

#include <vector>

#include "cfp/coupling.hpp"
#include "cfp/grid.hpp"
#include "cfp/hilbert.hpp"
#include "cfp/operators.hpp"

namespace cfp {

// [0, pi] branch of arctan(y/x) for y >= 0; pi/2 - arctan(x/y) when y > 0.
double arctan_0pi(double y, double x);

struct TwoPointEval {
    double a = 0.0;
    double b = 0.0;
    double tau = 0.0;  // tau_b(a) in [0, pi]
    double g_ab = 0.0;
    bool branch_flag = false;     // |b + Rf(a)| < 1e-12
    bool cutoff_warning = false;  // truncated H[tau] sensitive to the cutoff above 1e-3
};

// G_ab reconstructed from a boundary solution f = log G_{.0}. In power-law mode the
// Hilbert transforms of tau continue past the cutoff with Rf from the tail model, in
// hard-cutoff mode they stop at the cutoff.
class TwoPointFunction {
public:
    TwoPointFunction(const GridFunction& f, const Coupling& c, const QuadratureConfig& cfg);

    // [0, pi] branch of arctan(|l| pi a / (b + Rf(a)))
    double tau(double a, double b, bool* branch_flag = nullptr) const;
    TwoPointEval eval(double a, double b) const;
    // |G_ab - G_ba| / G_ab
    double symmetry_defect(double a, double b) const;
    // max over nodes b <= b_max of |G_0b - exp f(b)| / exp f(b)
    double boundary_defect(double b_max) const;

    const GridFunction& function() const { return f_; }
    double cutoff() const { return f_.cutoff(); }

private:
    GridFunction f_;
    Coupling c_;
    TransformContext ctx_;
    std::vector<double> rf_nodes_;
    double h00_ = 0.0;  // H_0[tau_0] over [0, L]
    bool tail_ = false;
    std::vector<double> tx_, tw_, trf_;  // quadrature beyond L, Rf there
    double theta_inf_ = 0.0, slope_inf_ = 0.0, x_end_ = 0.0;

    // (1/pi) int_L^inf tau_b(x)/(x-a) - tau_0(x)/x dx
    double tail_term(double a, double b) const;

    std::vector<double> tau_on_nodes(double b) const;
    double g_positive(double a, double b, bool* branch, bool* warn) const;
};

}  // namespace cfp
