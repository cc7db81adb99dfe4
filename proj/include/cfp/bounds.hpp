#pragma once

#include <array>
#include <vector>

#include "cfp/coupling.hpp"
#include "cfp/report.hpp"

namespace cfp {

// Lower bound function F with its first two derivatives. F'(0) = -inf, F''(0) = +inf.
double f_bound(double a);
double f_bound_prime(double a);
double f_bound_second(double a);

// F-hat for 0 < lambda_r < 1/2
double fhat(double lambda_r, double a);
double fhat_prime(double lambda_r, double a);
double fhat_second(double lambda_r, double a);

// Three-piece minorant of F: tangent at 1/5 on [0,1/2], tangent at 3/2 on [1/2,6],
// F(6) beyond. Breakpoints take the smaller one-sided value.
double s_bound(double a);

// Tangent values used throughout: F(1/5), F'(1/5), F(3/2), F'(3/2), F(6).
struct FAnchors {
    double f5, d5, f32, d32, f6;
};
const FAnchors& f_anchors();

struct DeltaConstants {
    std::array<double, 6> delta{};  // delta_1 .. delta_6
    double gamma_cot = 0.0;         // cot(lambda_r pi)
    double abs_lambda = 0.0;

    static DeltaConstants make(const Coupling& c);
    double beta_of_b(double b) const;  // (b+1)/(|l| pi)
};

// Closed-form upper bound of (Tf)'(b) + (1-lambda_r)/(1+b), valid for every f in K_lambda.
double upper_bound_master(double b, const Coupling& c);

// Printed coefficients c_14 .. c_18 (index 0 is c_14). Singular at lambda = 0.
std::array<double, 5> c_coeffs_printed(const Coupling& c);

// Pointwise bounds (Delta R)^(1..3) on |Rf(t) - Rg(t)| for lb_norm(f-g) = delta.
std::array<double, 3> delta_r_bounds(double t, double delta, const Coupling& c);

double continuity_constant(const Coupling& c);

double hilbert_quotient_modulus(double a, double delta, const Coupling& c);

double c_aux(double x, const Coupling& c);
// smallest argument at which C is used: h_l sin(l_r pi) cos(l_r pi) / (|l| pi), h_l = 1 - |l|/5
double c_aux_argument_min(const Coupling& c);
double c_tilde_aux(double alpha, const Coupling& c);
// The same quantity from the xi-integrated form (used near alpha = 1).
double c_tilde_xi_form(double alpha, const Coupling& c);
// Same functions of s = log(alpha), usable far beyond the double range of alpha.
double c_tilde_aux_log(double s, const Coupling& c);
double c_tilde_xi_form_log(double s, const Coupling& c);

// int_0^inf log(1+t)^2/(t+alpha)^2 dt and .../(t+alpha)^3 dt
double log2_integral_2(double alpha);
double log2_integral_3(double alpha);

// Certification scans over dense grids.
std::vector<VerificationReport> verify_F_properties(int n = 10000);
VerificationReport verify_f_ge_s(int n = 10000);
VerificationReport verify_master(int n_lambda = 200, int n_b = 1000);
VerificationReport verify_c_coeffs(int n_lambda = 200);
VerificationReport verify_c_aux_sup(const Coupling& c, int n = 4000);
VerificationReport verify_c_tilde_sup(const Coupling& c, int n = 6000);

// Tangent intersection of F at 1/5 and 1/4 together with F there.
struct TangentPoint {
    double t;
    double value;
};
TangentPoint f_tangent_minimum();
// True minimiser of F on [0, 1/2] (golden section on the sampled bracket).
TangentPoint f_true_minimum();

}  // namespace cfp
