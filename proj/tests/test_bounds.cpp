#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "cfp/bounds.hpp"
#include "cfp/errors.hpp"
#include "cfp/hilbert.hpp"
#include "cfp/operators.hpp"
#include "cfp/specfun.hpp"

using namespace cfp;
namespace bq = boost::math::quadrature;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
const double kLam2pi = -1.0 / (2.0 * kPi);

// central differences of f_bound as an independent check on the printed derivatives
double num_d1(double (*f)(double), double a, double h) { return (f(a + h) - f(a - h)) / (2 * h); }
double num_d2(double (*f)(double), double a, double h) { return (f(a + h) - 2 * f(a) + f(a - h)) / (h * h); }

}  // namespace

TEST(FBound, ReferenceValues) {
    EXPECT_EQ(f_bound(0.0), 0.0);
    EXPECT_NEAR(f_bound(1.0), 0.141693, 1e-6);
    EXPECT_NEAR(f_bound(1.0), 0.141693168150165, 1e-13);
    EXPECT_NEAR(f_bound(6.0), 3.53350107387089, 1e-12);
    EXPECT_NEAR(f_bound(0.2), -0.188607703584135, 1e-13);
    EXPECT_NEAR(f_bound(1.5), 0.469680733660155, 1e-13);
    EXPECT_NEAR(f_bound(0.223714), -0.190334, 2e-4);
}

TEST(FBound, PrintedDerivativesMatchReference) {
    struct Row {
        double a, d1, d2;
    };
    for (Row r : {Row{0.1, -0.639869258880167, 8.24891871728102}, Row{0.5, 0.404239827697574, 0.847126878384230},
                  Row{1.0, 0.620439429275235, 0.203654600569259}, Row{2.3, 0.700543490974970, 0.00258267657932442},
                  Row{7.0, 0.632816142827764, -0.0146411171734082}}) {
        EXPECT_NEAR(f_bound_prime(r.a), r.d1, 1e-12) << r.a;
        EXPECT_NEAR(f_bound_second(r.a), r.d2, 1e-11) << r.a;
    }
    EXPECT_NEAR(f_bound_prime(0.2), -0.111609536520783, 1e-12);
    EXPECT_NEAR(f_bound_prime(1.5), 0.680129298422048, 1e-12);
}

TEST(FBound, DerivativesConsistentWithFiniteDifferences) {
    for (double a : {0.05, 0.3, 0.9, 2.25, 2.5, 12.0, 300.0}) {
        double h = 1e-4 * std::max(a, 0.1);
        EXPECT_NEAR(f_bound_prime(a), num_d1(f_bound, a, h), 1e-7 * std::max(1.0, std::fabs(f_bound_prime(a))));
        EXPECT_NEAR(f_bound_second(a), num_d2(f_bound, a, 1e-3 * std::max(a, 0.1)),
                    1e-4 * std::max(1.0, std::fabs(f_bound_second(a))));
    }
    EXPECT_EQ(f_bound_prime(0.0), -INFINITY);
    EXPECT_EQ(f_bound_second(0.0), INFINITY);
}

TEST(FBound, MinimumLocation) {
    auto tp = f_tangent_minimum();
    EXPECT_NEAR(tp.t, 0.223714, 1e-6);
    EXPECT_NEAR(tp.value, -0.190334, 1e-6);
    EXPECT_NEAR(tp.t, 0.223713584668132, 1e-10);
    EXPECT_NEAR(tp.value, f_bound(tp.t), 1e-15);
    EXPECT_NEAR(tp.value, -0.190334058793518, 1e-10);
    // tangent line at 1/5 evaluated at t_m stays below F there
    EXPECT_NEAR(f_bound(0.2) + (tp.t - 0.2) * f_bound_prime(0.2), -0.191254365778191, 1e-10);
    auto m = f_true_minimum();
    // Brent minimisation as independent check
    auto bm = boost::math::tools::brent_find_minima([](double a) { return f_bound(a); }, 0.1, 0.4, 40);
    EXPECT_NEAR(m.t, bm.first, 1e-7);
    EXPECT_NEAR(m.t, 0.236336135014823, 1e-6);
    EXPECT_NEAR(m.value, -0.190557879677704, 1e-12);
    EXPECT_GE(m.value, -0.2);
    EXPECT_LE(m.value, tp.value);
}

TEST(FHat, ValuesAndDerivatives) {
    EXPECT_EQ(fhat(0.25, 0.0), 0.0);
    EXPECT_GT(fhat(0.25, 1.5), 0.0);
    EXPECT_NEAR(fhat(0.25, 1.5), 0.120325974514028, 1e-12);
    struct Row {
        double a, d1, d2;
    };
    for (Row r : {Row{0.3, -0.0600860742123486, 1.67875928770336}, Row{1.5, 0.417249913794088, 0.0816003506997828},
                  Row{4.0, 0.483173052878617, 0.00735176141791934}}) {
        EXPECT_NEAR(fhat_prime(0.25, r.a), r.d1, 1e-12) << r.a;
        EXPECT_NEAR(fhat_second(0.25, r.a), r.d2, 1e-11) << r.a;
    }
    // tangent intersection at 1/5 and 3/2
    double f5 = fhat(0.25, 0.2), d5 = fhat_prime(0.25, 0.2), f3 = fhat(0.25, 1.5), d3 = fhat_prime(0.25, 1.5);
    double t = (f3 - f5 + 0.2 * d5 - 1.5 * d3) / (d5 - d3);
    EXPECT_NEAR(t, 0.50048, 1e-5);
    EXPECT_NEAR(f5 + (t - 0.2) * d5, -0.296723, 1e-6);
    EXPECT_NEAR(t, 0.500480483500326, 1e-10);
    // the true minimum lies above the tangent intersection value
    auto bm = boost::math::tools::brent_find_minima([](double a) { return fhat(0.25, a); }, 0.1, 1.5, 40);
    EXPECT_GE(bm.second, -0.296723457580970);
    EXPECT_THROW(fhat(0.5, 1.0), DomainError);
}

TEST(FHat, DecreasingInLambdaR) {
    for (double a : {0.1, 0.5, 2.0, 30.0, 1e3}) {
        double prev = fhat(0.05, a);
        for (double r = 0.06; r <= 0.2500001; r += 0.01) {
            double v = fhat(r, a);
            EXPECT_LT(v, prev) << r << " " << a;
            prev = v;
        }
    }
}

TEST(FHat, BernoulliPositivity) {
    for (double r = 0.05; r < 1.0; r += 0.1)
        for (double a : {1e-3, 0.5, 3.0, 1e2, 1e5}) EXPECT_GE(((1.0 + r * a) / std::pow(1.0 + a, r) - 1.0) / r, 0.0);
}

TEST(SBound, Pieces) {
    const auto& an = f_anchors();
    EXPECT_NEAR(s_bound(0.0), an.f5 - 0.2 * an.d5, 1e-15);
    EXPECT_EQ(s_bound(6.0), an.f6);
    EXPECT_LT(s_bound(std::nextafter(6.0, 0.0)), an.f6);
    EXPECT_EQ(s_bound(1e4), an.f6);
    EXPECT_NEAR(s_bound(1.5), f_bound(1.5), 1e-14);
    EXPECT_NEAR(s_bound(0.2), f_bound(0.2), 1e-14);
    // jump at 1/2 between the two tangents; the minimum of both is used
    double left = an.f5 + 0.3 * an.d5, right = an.f32 - an.d32;
    EXPECT_GT(std::fabs(left - right), 0.0);
    EXPECT_EQ(s_bound(0.5), std::min(left, right));
}

TEST(SBound, BelowF) {
    auto r = verify_f_ge_s();
    EXPECT_TRUE(r.passed);
    EXPECT_GE(r.worst_margin, -1e-12);
    for (double a : log_grid(0.0, 1e3, 2000)) EXPECT_GE(f_bound(a) - s_bound(a), -1e-12) << a;
}

TEST(Lemma3, AllSixProperties) {
    auto reps = verify_F_properties();
    ASSERT_EQ(reps.size(), 6u);
    for (const auto& r : reps) {
        EXPECT_TRUE(r.passed) << r.to_text();
        EXPECT_GE(r.worst_margin, 0.0) << r.lemma_id;
    }
    // worst point of F >= -1/5 is the true minimiser, just right of the tangent intersection 0.2237
    EXPECT_NEAR(reps[5].worst_location.at(0), 0.236336, 2e-3);
    // item 4 at 9/4
    EXPECT_GT(0.1 - std::fabs(f_bound_second(2.25)), 0.0);
    EXPECT_GE(f_bound(0.8), 0.0);
}

TEST(Delta, Constants) {
    const auto& an = f_anchors();
    EXPECT_LT(an.d5, 0.0);
    auto d = DeltaConstants::make(Coupling(-1.0 / 6.0));
    EXPECT_GT(d.delta[1], d.delta[0]);
    EXPECT_NEAR(d.gamma_cot, 1.0, 1e-14);
    EXPECT_NEAR(d.beta_of_b(2.0), 3.0 / (kPi / 6.0), 1e-14);
}

TEST(Master, ReferenceValues) {
    EXPECT_NEAR(upper_bound_master(0.0, Coupling(kLam2pi)), -0.00842093334562320, 1e-13);
    EXPECT_NEAR(upper_bound_master(0.0, Coupling(-1.0 / 6.0)), -0.00937544311255908, 1e-13);
    EXPECT_NEAR(upper_bound_master(1e4, Coupling(-1.0 / 6.0)), -1.47123548e-9, 1e-16);
    EXPECT_NEAR(upper_bound_master(0.0, Coupling(-1e-4)), -1.58107457e-9, 1e-16);
    EXPECT_EQ(upper_bound_master(3.0, Coupling(0.0)), 0.0);
}

TEST(Master, MatchesDirectIntegralOfMinorant) {
    // integrand with Rf replaced by its lower bound 1 + |l| S(t) + |l| pi t cot(l_r pi)
    Coupling c(-1.0 / 6.0);
    const double b = 0.7, g = 1.0 / std::tan(c.lambda_r * kPi);
    auto integrand = [&](double t) {
        double d = 1.0 + b + c.abs * s_bound(t) + c.alpha() * t * g;
        return c.abs / (c.alpha() * t * c.alpha() * t + d * d);
    };
    using GK = bq::gauss_kronrod<double, 61>;
    double I = GK::integrate(integrand, 0.0, 0.5, 10, 1e-14) + GK::integrate(integrand, 0.5, 6.0, 10, 1e-14) +
               bq::exp_sinh<double>().integrate([&](double u) { return integrand(6.0 + u); }, 1e-14);
    EXPECT_NEAR(I - c.lambda_r / (1.0 + b), upper_bound_master(b, c), 1e-12);
    EXPECT_NEAR(upper_bound_master(b, c), -0.00795742239437389, 1e-13);
}

TEST(Master, VanishesAsCouplingShrinks) {
    // quadratic in |l|
    double prev = INFINITY;
    for (double l : {1e-2, 1e-3, 1e-4, 1e-5}) {
        double w = 0.0;
        for (double b : log_grid(0.0, 1e4, 50)) w = std::max(w, std::fabs(upper_bound_master(b, Coupling(-l))));
        EXPECT_LT(w, 0.02 * prev);
        prev = w;
    }
    EXPECT_LT(prev, 2e-11);
}

TEST(Master, NonPositiveOnDenseGrid) {
    auto r = verify_master(60, 300);
    EXPECT_TRUE(r.passed) << r.to_text();
    EXPECT_EQ(r.violations, 0u);
    for (double b : log_grid(0.0, 1e4, 1000)) EXPECT_LE(upper_bound_master(b, Coupling(-1.0 / 6.0)), 0.0) << b;
}

TEST(CCoeffs, PrintedValues) {
    auto c = c_coeffs_printed(Coupling(-1.0 / 6.0));
    EXPECT_NEAR(c[4], -3.53 / 4.0, 1e-12);
    EXPECT_NEAR(c[3], -75.8125, 1e-9);
    EXPECT_NEAR(c[0], -1153029.656, 1e-3);
    auto d = c_coeffs_printed(Coupling(-1.0 / 12.0));
    const double ref[5] = {-17630553.457548708, -271680.65640781313, -7450.373218438212, -76.00035731205811, -0.353};
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(d[k], ref[k], 1e-10 * std::fabs(ref[k])) << k;
    EXPECT_THROW(c_coeffs_printed(Coupling(0.0)), DomainError);
}

TEST(CCoeffs, NonPositiveIncludingSmallCoupling) {
    auto r = verify_c_coeffs();
    EXPECT_TRUE(r.passed) << r.to_text();
    EXPECT_NEAR(r.worst_margin, 0.0029, 2e-4);
    for (double l : {1e-2, 1e-4, 1e-6})
        for (double v : c_coeffs_printed(Coupling(-l))) EXPECT_LT(v, 0.0);
}

TEST(DeltaR, Components) {
    Coupling c(kLam2pi);
    auto z = delta_r_bounds(0.0, 0.3, c);
    for (double v : z) EXPECT_EQ(v, 0.0);
    for (double v : delta_r_bounds(4.0, 0.0, c)) EXPECT_EQ(v, 0.0);
    auto d = delta_r_bounds(5.0, 0.01, c);
    EXPECT_NEAR(d[0], 0.0808321891404228, 1e-14);
    EXPECT_NEAR(d[1], 0.0301394331691085, 1e-14);
    EXPECT_NEAR(d[2], 0.0105864017971729, 1e-14);
    for (double t : {0.1, 10.0, 1e4, 1e8}) EXPECT_LE(delta_r_bounds(t, 0.2, c)[2], 0.2 * t / c.abs);
}

TEST(DeltaR, DominatesMeasuredDifference) {
    std::mt19937_64 rng(21);
    QuadratureConfig cfg;
    cfg.n_nodes = 500;
    auto nodes = make_nodes(cfg.lambda2, cfg.n_nodes);
    for (double lam : {-0.05, -1.0 / 6.0}) {
        Coupling c(lam);
        for (int k = 0; k < 3; ++k) {
            auto f = random_k_lambda(c, nodes, rng), g = random_k_lambda(c, nodes, rng);
            double delta = lb_distance(f, g);
            TransformContext cf(f, c, cfg), cg(g, c, cfg);
            for (double t : log_grid(1e-3, 1e6, 40)) {
                auto d = delta_r_bounds(t, delta, c);
                EXPECT_LE(std::fabs(cf.rf(t) - cg.rf(t)), d[0] + d[1] + d[2] + 1e-6) << lam << " " << t;
            }
        }
    }
}

TEST(Continuity, Constant) {
    EXPECT_NEAR(continuity_constant(Coupling(0.0)), 1.36788, 1e-5);
    EXPECT_NEAR(continuity_constant(Coupling(0.0)), 1.0 + 1.0 / kE, 1e-14);
    EXPECT_NEAR(continuity_constant(Coupling(-1.0 / 6.0)), 4.09942, 1e-5);
    EXPECT_NEAR(continuity_constant(Coupling(-1.0 / 12.0)), 2.11854857422585, 1e-12);
    EXPECT_NEAR(continuity_constant(Coupling(kLam2pi)), 3.79457295191601, 1e-12);
    double prev = continuity_constant(Coupling(0.0));
    for (int i = 1; i <= 100; ++i) {
        double k = continuity_constant(Coupling(-i / 600.0));
        EXPECT_GT(k, prev);
        prev = k;
    }
    // continuous at zero
    EXPECT_NEAR(continuity_constant(Coupling(-1e-9)), 1.0 + 1.0 / kE, 1e-8);
}

TEST(HilbertModulus, Values) {
    Coupling c(kLam2pi);
    EXPECT_NEAR(hilbert_quotient_modulus(0.0, 0.2, c), 0.2 * zeta_lambda(c), 1e-15);
    EXPECT_EQ(hilbert_quotient_modulus(7.0, 0.0, c), 0.0);
    EXPECT_NEAR(hilbert_quotient_modulus(10.0, 0.01, c), 0.0191805529974843, 1e-14);
}

TEST(HilbertModulus, DominatesMeasuredDifference) {
    std::mt19937_64 rng(22);
    auto nodes = make_nodes(1e6, 800);
    Coupling c(kLam2pi);
    for (int k = 0; k < 4; ++k) {
        auto f = random_k_lambda(c, nodes, rng), g = random_k_lambda(c, nodes, rng);
        double delta = lb_distance(f, g);
        ExpHilbert hf(f, TailMode::power_law), hg(g, TailMode::power_law);
        for (double a : {1e-2, 1.0, 10.0, 1e3, 1e5})
            EXPECT_LE(std::fabs(hf.quotient(a) - hg.quotient(a)), hilbert_quotient_modulus(a, delta, c) + 1e-7) << a;
    }
}

TEST(CAux, ClosedFormAgainstIntegral) {
    Coupling c(-0.1);
    EXPECT_NEAR(c_aux(3.0, c), 0.222225862911518, 1e-13);
    EXPECT_NEAR(c_aux(50.0, c), 0.324459257415759, 1e-13);
    EXPECT_NEAR(c_aux(0.2, c), 0.150006420415904, 1e-13);
    // the integral before integration by parts
    const double l = 0.1;
    for (double x : {0.2, 3.0, 50.0}) {
        auto g = [&](double t) {
            double lg = std::log1p(t);
            return (1 - l) * lg / ((t + x) * (t + x)) + ((1 - l) + (2 * l - 1) * x) * lg / std::pow(t + x, 3);
        };
        double I = bq::gauss_kronrod<double, 61>::integrate(g, 0.0, x, 10, 1e-13) +
                   bq::exp_sinh<double>().integrate([&](double u) { return g(x + u); }, 1e-13);
        EXPECT_NEAR(c_aux(x, c), 2 * l * std::pow(x, 1 - l) * I, 1e-10) << x;
    }
    // removable point x = 1
    EXPECT_NEAR(c_aux(1.0, c), c_aux(1.0 + 1e-3, c), 1e-3);
}

TEST(CAux, ArgumentRange) {
    EXPECT_EQ(c_aux_argument_min(Coupling(0.0)), 1.0);
    EXPECT_NEAR(c_aux_argument_min(Coupling(-1.0 / 6.0)), 0.923098669932993, 1e-14);
    EXPECT_NEAR(c_aux_argument_min(Coupling(-1e-8)), 1.0, 1e-7);
}

TEST(CAux, SupremumBelowBound) {
    for (double lam : {-0.05, -0.1, -1.0 / 6.0}) {
        Coupling c(lam);
        auto r = verify_c_aux_sup(c);
        EXPECT_TRUE(r.passed) << r.to_text();
    }
    EXPECT_NEAR(-verify_c_aux_sup(Coupling(-1.0 / 6.0)).worst_margin + (1 + 1.0 / 6) / kE, 0.413327501477251, 1e-6);
}

TEST(CTilde, ClosedFormAgainstXiForm) {
    Coupling c(-0.1);
    EXPECT_NEAR(c_tilde_aux(2.0, c), 0.0273560959957717, 1e-13);
    EXPECT_NEAR(c_tilde_aux(0.3, c), 0.00911255630179312, 1e-13);
    EXPECT_NEAR(c_tilde_aux(1e3, c), 0.201931246139497, 1e-12);
    for (double a : {0.05, 0.3, 0.999, 1.001, 2.0, 40.0, 1e6}) EXPECT_NEAR(c_tilde_aux(a, c), c_tilde_xi_form(a, c), 1e-11) << a;
    for (double s : {-3.0, 0.5, 20.0, 300.0}) EXPECT_NEAR(c_tilde_aux_log(s, c), c_tilde_xi_form_log(s, c), 1e-10) << s;
    EXPECT_NEAR(c_tilde_aux_log(std::log(2.0), c), c_tilde_aux(2.0, c), 1e-13);
}

TEST(CTilde, TendsToOne) {
    for (double lam : {-0.05, -0.1, -1.0 / 6.0}) {
        Coupling c(lam);
        EXPECT_NEAR(c_tilde_aux_log(1e4 / c.abs, c), 1.0, 1e-3) << lam;
    }
}

TEST(CTilde, SupremumBelowBound) {
    for (double lam : {-0.05, -0.1, -1.0 / 6.0}) {
        auto r = verify_c_tilde_sup(Coupling(lam));
        EXPECT_TRUE(r.passed) << r.to_text();
    }
    auto r = verify_c_tilde_sup(Coupling(-1.0 / 6.0));
    EXPECT_NEAR(1.0 + 1.0 / 24.0 - r.worst_margin, 1.03747, 1e-4);
    EXPECT_NEAR(r.worst_location.at(0), 43.0, 3.0);
}

TEST(LogIntegrals, UnitValuesAndQuadrature) {
    EXPECT_NEAR(log2_integral_2(1.0), 2.0, 1e-14);
    EXPECT_NEAR(log2_integral_3(1.0), 0.25, 1e-14);
    EXPECT_NEAR(log2_integral_2(2.0), kPi * kPi / 6.0, 1e-13);
    struct Row {
        double a, j2, j3;
    };
    for (Row r : {Row{2.0, 1.64493406684822644, 0.129319852864167909}, Row{0.5, 2.32896210586005002, 0.443626616379731214},
                  Row{50.0, 0.375418845286979504, 0.00220147384594037976}}) {
        EXPECT_NEAR(log2_integral_2(r.a), r.j2, 1e-13);
        EXPECT_NEAR(log2_integral_3(r.a), r.j3, 1e-13);
    }
    // series branch near 1 against direct quadrature
    for (double a : {0.97, 1.0 + 1e-7, 1.04}) {
        auto q = [&](int p) {
            auto g = [&](double t) { return std::pow(std::log1p(t), 2) / std::pow(t + a, p); };
            return bq::gauss_kronrod<double, 61>::integrate(g, 0.0, 1.0, 10, 1e-14) +
                   bq::exp_sinh<double>().integrate([&](double u) { return g(1.0 + u); }, 1e-14);
        };
        EXPECT_NEAR(log2_integral_2(a), q(2), 1e-10) << a;
        EXPECT_NEAR(log2_integral_3(a), q(3), 1e-11) << a;
    }
}

TEST(Report, Serialization) {
    auto r = make_report("F_ge_S", "log grid", 0.5, {1.0, 2.0}, 10, 0);
    EXPECT_TRUE(r.passed);
    auto j = r.to_json();
    EXPECT_EQ(j["lemma_id"], "F_ge_S");
    EXPECT_DOUBLE_EQ(j["worst_margin"].get<double>(), 0.5);
    EXPECT_NE(r.to_text().find("F_ge_S"), std::string::npos);
    auto tiny = make_report("x", "y", 1e-12, {0.0});
    EXPECT_TRUE(tiny.inconclusive);
    EXPECT_FALSE(tiny.passed);
    EXPECT_NE(tiny.to_text().find("INCONCLUSIVE"), std::string::npos);
    auto bad = make_report("x", "y", -1.0, {0.0}, 3, 1);
    EXPECT_FALSE(bad.passed);
}
