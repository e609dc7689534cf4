#include "doctest.h"

#include "laglab/errors.hpp"
#include "laglab/quadrature.hpp"
#include "laglab/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace laglab;
using doctest::Approx;

TEST_CASE("log_gamma") {
    CHECK(log_gamma(1.0) == Approx(0.0).epsilon(1e-15));
    CHECK(log_gamma(5.0) == Approx(std::log(24.0)).epsilon(1e-14));
    // mpmath, 30 digits
    CHECK(log_gamma(0.5) == Approx(0.572364942924700087).epsilon(1e-14));
    CHECK(log_gamma(123.4) == Approx(469.336097442190558).epsilon(1e-14));
    CHECK(log_gamma(1e6) == Approx(12815504.5691476117).epsilon(1e-14));
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-2.5), std::domain_error);
}

TEST_CASE("binom_A recurrence values") {
    CHECK(binom_A(0, 3.7) == 1.0);
    CHECK(binom_A(0, -2.0) == 1.0);
    CHECK(binom_A(2, 0.5) == Approx(1.875));
    CHECK(binom_A(1, -2.0) == Approx(-1.0));
    CHECK(binom_A(2, -1.0) == 0.0);
    for (int j = 1; j < 10; ++j) CHECK(binom_A(j, -1.0) == 0.0);
    // A_j^delta agrees with the gamma quotient where both are defined
    for (int j = 0; j < 40; ++j) {
        const double delta = 1.3;
        const double ref = std::exp(log_gamma(j + delta + 1) - log_gamma(delta + 1) - log_gamma(j + 1.0));
        CHECK(binom_A(j, delta) == Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("laguerre_poly") {
    CHECK(laguerre_poly(0, 0.7, 12.0) == 1.0);
    CHECK(laguerre_poly(1, 2.0, 3.0) == 0.0);
    CHECK(laguerre_poly(3, 1.0, 0.0) == Approx(4.0));
    // L_2^0(x) = 1 - 2x + x^2/2
    CHECK(laguerre_poly(2, 0.0, 1.5) == Approx(1.0 - 3.0 + 1.125));
    SUBCASE("value at zero equals binom_A for all k <= 50") {
        for (double alpha : {-0.5, 0.0, 0.5, 1.0, 2.5})
            for (int k = 0; k <= 50; ++k)
                CHECK(laguerre_poly(k, alpha, 0.0) == Approx(binom_A(k, alpha)).epsilon(1e-12));
    }
}

TEST_CASE("laguerre_fn spot values") {
    CHECK(laguerre_fn(SystemTag::make(Family::l, 0.0), 0, 0.0) == 1.0);
    CHECK(laguerre_fn(SystemTag::make(Family::script_l, 1.0), 0, 1.0) == Approx(std::exp(-0.5)).epsilon(1e-15));
    // mpmath references
    const auto l05 = SystemTag::make(Family::l, 0.5);
    CHECK(laguerre_fn(l05, 20, 10.0) == Approx(0.00455657866764351682).epsilon(1e-12));
    CHECK(laguerre_fn(SystemTag::make(Family::l, 1.0), 1000, 50.0) ==
          Approx(-0.00201739012714437081).epsilon(1e-9));
    CHECK(laguerre_fn(SystemTag::make(Family::l, 0.0), 10000, 150.0) ==
          Approx(-0.0161002296741820550).epsilon(1e-8));
}

TEST_CASE("system identities on a grid") {
    for (double alpha : {0.0, 0.5, 1.0, 2.5}) {
        const auto l = SystemTag::make(Family::l, alpha);
        const auto sl = SystemTag::make(Family::script_l, alpha);
        const auto phi = SystemTag::make(Family::phi, alpha);
        const auto psi = SystemTag::make(Family::psi, alpha);
        for (double x = 0.05; x < 5.0; x += 0.37) {
            const auto lx2 = basis_values(l, 12, x * x);
            const auto slx2 = basis_values(sl, 12, x * x);
            const auto ph = basis_values(phi, 12, x);
            const auto ps = basis_values(psi, 12, x);
            for (int k = 0; k <= 12; ++k) {
                CHECK(ps[k] == Approx(std::sqrt(2.0) * lx2[k]).epsilon(1e-12).scale(1e-3));
                CHECK(ph[k] == Approx(slx2[k] * std::sqrt(2.0 * x)).epsilon(1e-12).scale(1e-3));
                CHECK(ps[k] == Approx(laguerre_fn(psi, k, x)).epsilon(1e-12).scale(1e-3));
            }
        }
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(SystemTag::make(Family::l, -1.0), std::domain_error);
    CHECK_THROWS_AS(laguerre_fn(SystemTag::make(Family::phi, 0.0), 1, 0.0), std::domain_error);
    CHECK_THROWS_AS(laguerre_fn(SystemTag::make(Family::l, 0.0), 1, -0.1), std::domain_error);
    CHECK_THROWS_AS(laguerre_fn(SystemTag::make(Family::script_l, -0.5), 1, 0.0), std::domain_error);
    CHECK_NOTHROW(laguerre_fn(SystemTag::make(Family::script_l, 0.5), 1, 0.0));
    CHECK_NOTHROW(laguerre_fn(SystemTag::make(Family::psi, 0.5), 3, 0.0));
}

namespace {

// Gram matrix of the first n functions under the tag's measure.
double gram_defect(const SystemTag& tag, int n, const QuadRule& rule, bool laguerre_weight) {
    std::vector<std::vector<double>> values;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        auto v = basis_values(tag, n - 1, rule.nodes[i]);
        if (laguerre_weight)
            for (double& b : v) b *= std::exp(0.5 * rule.nodes[i]);  // e^{-x} already in the weight
        values.push_back(std::move(v));
    }
    double worst = 0.0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double g = 0.0;
            for (std::size_t i = 0; i < rule.size(); ++i) g += rule.weights[i] * values[i][j] * values[i][k];
            worst = std::max(worst, std::abs(g - (j == k ? 1.0 : 0.0)));
        }
    return worst;
}

} // namespace

TEST_CASE("orthonormality of all four systems") {
    for (double alpha : {0.0, 0.5, 1.0, 2.5}) {
        CAPTURE(alpha);
        CHECK(gram_defect(SystemTag::make(Family::l, alpha), 21, gauss_laguerre_rule(21, alpha), true) < 1e-10);
        const QuadRule flat = weighted_composite_rule(0.0, 140.0);
        CHECK(gram_defect(SystemTag::make(Family::script_l, alpha), 21, flat, false) < 1e-7);
        const QuadRule flat_sq = weighted_composite_rule(0.0, 14.0, 0.25);
        CHECK(gram_defect(SystemTag::make(Family::phi, alpha), 21, flat_sq, false) < 1e-7);
        const QuadRule mu = weighted_composite_rule(2.0 * alpha + 1.0, 14.0, 0.25);
        CHECK(gram_defect(SystemTag::make(Family::psi, alpha), 21, mu, false) < 1e-7);
    }
}

TEST_CASE("psi_k are eigenfunctions with lambda_k = 4k + 2 alpha + 2") {
    const double h = 1e-3;
    for (double alpha : {0.0, 1.0}) {
        const auto psi = SystemTag::make(Family::psi, alpha);
        for (int k = 0; k <= 10; ++k) {
            double num = 0.0, den = 0.0;
            for (double x = 0.5; x <= 4.0; x += 0.05) {
                const auto f = [&](double t) { return laguerre_fn(psi, k, t); };
                const double f0 = f(x);
                const double d1 = (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
                const double d2 =
                    (-f(x - 2 * h) + 16 * f(x - h) - 30 * f0 + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
                const double Lf = -(d2 + (2 * alpha + 1) / x * d1 - x * x * f0);
                const double lf = eigenvalue(alpha, k) * f0;
                num += (Lf - lf) * (Lf - lf);
                den += lf * lf;
            }
            CAPTURE(k);
            CHECK(std::sqrt(num / den) <= 1e-5);
        }
    }
    CHECK(eigenvalue(0.5, 0) == 3.0);
    for (int k = 0; k < 10; ++k) CHECK(eigenvalue(0.3, k + 1) > eigenvalue(0.3, k));
}

TEST_CASE("bessel_normalized") {
    CHECK(bessel_normalized(0.7, 0.0) == 1.0);
    CHECK(bessel_normalized(-0.5, std::numbers::pi) == Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(bessel_normalized(0.5, std::numbers::pi)) < 1e-15);
    for (double z = 0.0; z <= 40.0; z += 0.7) {
        CHECK(bessel_normalized(-0.5, z) == Approx(std::cos(z)).epsilon(1e-12).scale(1.0));
        if (z > 0) CHECK(bessel_normalized(0.5, z) == Approx(std::sin(z) / z).epsilon(1e-12).scale(1.0));
    }
    // mpmath references on both sides of the series/asymptotic switch
    CHECK(bessel_normalized(0.3, 2.5) == Approx(0.147425761223348091).epsilon(1e-13));
    CHECK(bessel_normalized(0.3, 7.9) == Approx(0.158384650984021029).epsilon(1e-12));
    CHECK(bessel_normalized(0.3, 8.1) == Approx(0.140873552856379293).epsilon(1e-12));
    CHECK(bessel_normalized(0.3, 30.0) == Approx(-0.0518210511407934114).epsilon(1e-11));
    CHECK(bessel_normalized(1.5, 59.0) == Approx(0.000673834294100867271).epsilon(1e-9));
    CHECK(bessel_normalized(-0.7, 12.0) == Approx(2.34565600373094016).epsilon(1e-12));
    CHECK_THROWS_AS(bessel_normalized(0.0, 61.0), accuracy_error);
    CHECK_THROWS_AS(bessel_normalized(-1.0, 1.0), std::domain_error);

    SUBCASE("|J_{alpha-1/2}| <= 1 for alpha >= 0") {
        for (double alpha : {0.0, 0.25, 0.5, 1.0, 2.0, 3.5})
            for (double z = 0.0; z <= bessel_z_max; z += 0.173)
                CHECK(std::abs(bessel_normalized(alpha - 0.5, z)) <= 1.0 + 1e-14);
    }
}

TEST_CASE("theta_distance") {
    CHECK(theta_distance(3.0, 1.25, 0.0) == Approx(1.75));
    CHECK(theta_distance(3.0, 1.25, std::numbers::pi) == Approx(4.25));
    CHECK(theta_distance(1.0, 1.0, std::numbers::pi / 2) == Approx(std::sqrt(2.0)));
    // no cancellation for x = y near theta = 0
    const double th = 1e-9;
    CHECK(theta_distance(1.0, 1.0, th) == Approx(2.0 * std::sin(th / 2)).epsilon(1e-14));
}
