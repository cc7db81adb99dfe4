#pragma once

#include <vector>

#include "cfp/coupling.hpp"
#include "cfp/grid.hpp"
#include "cfp/hilbert.hpp"

namespace cfp {

struct OperatorOutput {
    GridFunction grid;               // Tf on the nodes of f, derivs = (Tf)'
    std::vector<double> t_points;    // internal t quadrature
    std::vector<double> rf_values;   // Rf at t_points
};

// Everything T needs for one input f: the Hilbert cache and Rf on the t quadrature.
// Immutable after construction, so t_prime / t_direct may run concurrently.
class TransformContext {
public:
    TransformContext(const GridFunction& f, const Coupling& c, const QuadratureConfig& cfg);

    double rf(double t) const;        // Rf(t), Rf(0) = 1
    double t_prime(double b) const;   // (Tf)'(b)
    double t_direct(double b) const;  // Tf(b) from the arctan difference
    GridFunction t_op() const;        // cumulative integral of t_prime, Tf(0) = 0
    OperatorOutput t_op_full() const;

    const std::vector<double>& t_points() const { return ts_; }
    const std::vector<double>& rf_values() const { return rfs_; }
    double min_rf() const { return min_rf_; }
    const ExpHilbert& hilbert() const { return h_; }
    const Coupling& coupling() const { return c_; }

private:
    Coupling c_;
    QuadratureConfig cfg_;
    ExpHilbert h_;
    std::vector<double> ts_, wts_, rfs_, at2_;
    double t_end_ = 0.0;
    double slope_ = 0.0;   // Rf(t) ~ 1 + slope t beyond t_end (power-law mode)
    double min_rf_ = 0.0;
    double min_rf_t_ = 0.0;
    bool has_tail_ = false;

    void check_pole(double b) const;
};

double r_op(const GridFunction& f, double a, const Coupling& c, const QuadratureConfig& cfg);
double t_prime(const GridFunction& f, double b, const Coupling& c, const QuadratureConfig& cfg);
GridFunction t_op(const GridFunction& f, const Coupling& c, const QuadratureConfig& cfg);

// |f(0)| + max over nodes |(1+x) f'(x)|
double lb_norm(const GridFunction& f);
// lb_norm(f - g) for functions on the same nodes
double lb_distance(const GridFunction& f, const GridFunction& g);

}  // namespace cfp
