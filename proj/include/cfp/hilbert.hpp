#pragma once

#include <string>
#include <vector>

#include "cfp/grid.hpp"

namespace cfp {

enum class TailMode { power_law, hard_cutoff };

struct QuadratureConfig {
    int n_nodes = 2000;
    double lambda2 = 1e6;
    // Panels closer than pv_window panel widths to an exterior singular point are
    // refined geometrically.
    double pv_window = 1.0;
    TailMode tail_mode = TailMode::power_law;
    // t quadrature beyond the cutoff in power-law mode
    double t_extend_decades = 6.0;
    int t_panels_per_decade = 36;
    // b + Rf(t) <= 0 raises PoleError when set
    bool pole_guard = true;

    void validate() const;
};

const char* to_string(TailMode m);
TailMode tail_mode_from(const std::string& s);

// H_a[(beta+x)^(mu-1)] / (beta+a)^(mu-1) over [0, inf), closed form.
double hilbert_power_law(double beta, double mu, double a);

// Q(a) = H_a[e^f] / e^f(a) for one grid function, with e^f cached at the quadrature
// points. In power-law mode a >= L is allowed; hard-cutoff mode needs 0 < a < L.
class ExpHilbert {
public:
    ExpHilbert(GridFunction f, TailMode mode, double pv_window = 1.0);

    double quotient(double a) const;

    const GridFunction& function() const { return f_; }
    TailMode mode() const { return mode_; }
    double tail_exponent() const { return p_; }
    // fitted e^f decays slower than (1+x)^(-1/2)
    bool slow_tail() const { return p_ > -0.5; }

private:
    GridFunction f_;
    TailMode mode_;
    double pv_window_;
    double p_;
    double logc_;
    std::vector<double> xs_, ws_, es_, gs_;  // points, weights, e^f, e^f - C(1+x)^p

    double quotient_inside(double a) const;
    double quotient_beyond(double a) const;
};

double hilbert_of_exp(const GridFunction& f, double a, const QuadratureConfig& cfg);

// (1/pi) PV int_0^L g(x)/(x-a) dx for g sampled on nodes (PCHIP in between).
// a = 0 is allowed when g(0) = 0.
class SampledHilbert {
public:
    SampledHilbert(const std::vector<double>& nodes, const std::vector<double>& values);
    double at(double a) const;
    double cutoff() const { return g_.cutoff(); }

private:
    GridFunction g_;
    std::vector<double> xs_, ws_, gv_;
};

}  // namespace cfp
