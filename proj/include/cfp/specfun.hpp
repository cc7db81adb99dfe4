#pragma once

#include "cfp/coupling.hpp"

namespace cfp {

struct HypParams {
    double a;
    double b;
    double c;
    double z;
};

// 2F1(1, mu; 1+mu; z) for 0 < mu < 1, 0 <= z < 1.
double hyp2f1_1mu(double mu, double z);

// Gauss 2F1 on -1 < z < 1. Near z = 1 the connection formulas are used; integer
// c-a-b goes through the logarithmic expansions.
double hyp2f1(const HypParams& p);
inline double hyp2f1(double a, double b, double c, double z) { return hyp2f1({a, b, c, z}); }

double digamma(double x);

// Li_2(x) for x <= 1.
double dilog(double x);

// (1/pi) sum_k [1/(k+|l|)^2 + 1/(k-l_r)^2]
double zeta_lambda(const Coupling& c);

// x cot x, continuous at 0.
double xcotx(double x);

// (e^x - 1 - x)/x^2, continuous at 0.
double phi2(double x);

// Compensated accumulator.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    KahanSum& operator+=(double v) {
        add(v);
        return *this;
    }
    double value() const { return sum; }
};

}  // namespace cfp
