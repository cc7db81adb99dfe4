#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include "cfp/coupling.hpp"

namespace cfp {

// Sampled representative of f on [0, L]: node values and node derivatives, monotone
// cubic Hermite in between, power-law extension of e^f beyond L.
class GridFunction {
public:
    std::vector<double> nodes;
    std::vector<double> values;
    std::vector<double> derivs;

    GridFunction() = default;
    GridFunction(std::vector<double> x, std::vector<double> v, std::vector<double> d);

    std::size_t size() const { return nodes.size(); }
    double cutoff() const { return nodes.back(); }

    // Index i with nodes[i] <= x < nodes[i+1], clamped to the last interval.
    std::size_t interval(double x) const;

    // x > cutoff() uses the power-law tail.
    double value(double x) const;
    double deriv(double x) const;
    // Hermite value on interval i, no search.
    double value_in(std::size_t i, double x) const;

    // e^f(x) ~ exp(tail_log_scale) * (1+x)^tail_exponent for x >= L, fitted on the
    // last decade of nodes.
    double tail_exponent() const { return tail_p_; }
    double tail_log_scale() const { return tail_logc_; }

private:
    std::vector<double> dl_;  // limited end slopes per interval
    std::vector<double> dr_;
    double tail_p_ = 0.0;
    double tail_logc_ = 0.0;

    void prepare();
};

// n_linear nodes on [0,1] then log spacing up to lambda2 (n_nodes in total).
std::vector<double> make_nodes(double lambda2, int n_nodes, int n_linear = 32);

// Log-spaced points on [lo, hi]; lo == 0 puts 0 first and starts the log part at
// hi * 1e-8.
std::vector<double> log_grid(double lo, double hi, int n);

GridFunction grid_from(const std::vector<double>& nodes, const std::function<double(double)>& f,
                       const std::function<double(double)>& fp);

// f(x) = p * log(1+x)
GridFunction log_power(const std::vector<double>& nodes, double p);

GridFunction zero_function(const std::vector<double>& nodes);

// Random member of K_lambda: (1+x) f'(x) = -(1-|l|) theta - (1-l_r)(1-theta) with theta
// piecewise constant on dyadic blocks of log2(1+x), smoothed at block edges.
GridFunction random_k_lambda(const Coupling& c, const std::vector<double>& nodes,
                             std::mt19937_64& rng);

// Fritsch-Carlson derivative estimates for samples without derivative data.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y);

// min over nodes of the distance of (1+x) f'(x) to the K_lambda band; negative if outside.
double envelope_margin(const GridFunction& f, const Coupling& c, std::size_t* where = nullptr);

}  // namespace cfp
