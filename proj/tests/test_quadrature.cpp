#include "doctest.h"

#include "laglab/errors.hpp"
#include "laglab/quadrature.hpp"
#include "laglab/special_functions.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace laglab;
using doctest::Approx;

TEST_CASE("gauss_laguerre_rule small cases") {
    for (double alpha : {-0.5, 0.0, 1.3}) {
        const QuadRule r = gauss_laguerre_rule(1, alpha);
        CHECK(r.nodes[0] == Approx(alpha + 1.0));
        CHECK(r.weights[0] == Approx(std::tgamma(alpha + 1.0)));
    }
    const QuadRule r2 = gauss_laguerre_rule(2, 0.0);
    CHECK(r2.nodes[0] == Approx(2.0 - std::sqrt(2.0)).epsilon(1e-15));
    CHECK(r2.nodes[1] == Approx(2.0 + std::sqrt(2.0)).epsilon(1e-15));
    CHECK(r2.weights[0] == Approx((2.0 + std::sqrt(2.0)) / 4.0).epsilon(1e-15));
    CHECK(r2.weights[1] == Approx((2.0 - std::sqrt(2.0)) / 4.0).epsilon(1e-15));
    CHECK(r2.integrate([](double x) { return x * x * x; }) == Approx(6.0).epsilon(1e-13));
    CHECK(r2.exactness == 3);
}

TEST_CASE("gauss_laguerre_rule invariants and exactness") {
    for (int N : {5, 21, 64, 200, 512}) {
        for (double alpha : {-0.5, 0.0, 0.5, 2.5}) {
            CAPTURE(N);
            CAPTURE(alpha);
            const QuadRule r = gauss_laguerre_rule(N, alpha);
            REQUIRE(r.size() == static_cast<std::size_t>(N));
            for (std::size_t i = 0; i < r.size(); ++i) {
                CHECK(r.weights[i] >= 0.0);
                CHECK(r.nodes[i] > 0.0);
                if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
            }
            CHECK(r.total_mass() == Approx(std::tgamma(alpha + 1.0)).epsilon(1e-12));
            // moments x^j against x^alpha e^{-x}: Gamma(j + alpha + 1)
            for (int j = 1; j <= std::min(2 * N - 1, 20); ++j) {
                const double m = r.integrate([&](double x) { return std::pow(x, j); });
                CHECK(m == Approx(std::tgamma(j + alpha + 1.0)).epsilon(1e-11));
            }
        }
    }
    CHECK_THROWS_AS(gauss_laguerre_rule(0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_laguerre_rule(513, 0.0), std::invalid_argument);
}

TEST_CASE("gauss_legendre_rule") {
    const QuadRule r = gauss_legendre_rule(2, -1.0, 1.0);
    CHECK(r.nodes[0] == Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r.nodes[1] == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r.weights[0] == Approx(1.0).epsilon(1e-15));
    CHECK(r.weights[1] == Approx(1.0).epsilon(1e-15));
    CHECK(gauss_legendre_rule(2, 0.0, 1.0).integrate([](double y) { return y * y; }) ==
          Approx(1.0 / 3.0).epsilon(1e-14));
    for (int N : {1, 3, 7, 32, 128})
        CHECK(gauss_legendre_rule(N, -2.0, 5.5).total_mass() == Approx(7.5).epsilon(1e-14));
    const QuadRule r9 = gauss_legendre_rule(9, 0.0, 2.0);
    CHECK(r9.integrate([](double x) { return std::pow(x, 17); }) == Approx(std::pow(2.0, 18) / 18.0).epsilon(1e-13));
    CHECK_THROWS_AS(gauss_legendre_rule(4, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("gauss_jacobi_rule moments") {
    for (auto [a, b] : {std::pair{0.0, 0.0}, {0.5, 0.5}, {-0.5, 1.7}, {2.0, -0.3}}) {
        const QuadRule r = gauss_jacobi_rule(12, a, b);
        // int (1-t)^a (1+t)^b t^0 = 2^{a+b+1} B(a+1, b+1)
        const double mass = std::pow(2.0, a + b + 1) * boost::math::beta(a + 1, b + 1);
        CHECK(r.total_mass() == Approx(mass).epsilon(1e-13));
        // (1+t)^3 moment: 2^{a+b+4} B(a+1, b+4)
        const double m3 = std::pow(2.0, a + b + 4) * boost::math::beta(a + 1, b + 4);
        CHECK(r.integrate([](double t) { return std::pow(1 + t, 3); }) == Approx(m3).epsilon(1e-13));
    }
}

TEST_CASE("weighted composite rule folds x^w") {
    for (double w : {-0.7, 0.0, 0.5, 3.0}) {
        const QuadRule r = weighted_composite_rule(w, 3.0);
        CHECK(r.total_mass() == Approx(std::pow(3.0, w + 1) / (w + 1)).epsilon(1e-13));
        for (std::size_t i = 1; i < r.size(); ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
    std::ostringstream csv;
    write_csv(gauss_legendre_rule(2, -1.0, 1.0), csv);
    CHECK(csv.str().rfind("node,weight\n", 0) == 0);
}

TEST_CASE("weighted_norm examples") {
    const DecayCertificate half{1.0, 0.5, 1.0};
    CHECK(weighted_norm([](double x) { return std::exp(-0.5 * x); }, NormSpec::plain(2, 0), 1e-12, half) ==
          Approx(1.0).epsilon(1e-12));
    const auto l00 = SystemTag::make(Family::l, 0.0);
    CHECK(weighted_norm([&](double x) { return laguerre_fn(l00, 0, x); }, NormSpec::plain(2, 0), 1e-12, half) ==
          Approx(1.0).epsilon(1e-12));
    CHECK(weighted_norm([](double x) { return std::exp(-x); }, NormSpec::plain(1, 1), 1e-12, {1.0, 1.0, 1.0}) ==
          Approx(1.0).epsilon(1e-12));
    // Gaussian decay, mu_alpha measure: int e^{-x^2} x^{2 alpha + 1} dx = Gamma(alpha + 1) / 2
    CHECK(weighted_norm([](double x) { return std::exp(-0.5 * x * x); }, NormSpec::mu(2, 0, 1.5), 1e-12,
                        {1.0, 0.5, 2.0}) == Approx(std::sqrt(std::tgamma(2.5) / 2)).epsilon(1e-12));
    // mpmath reference; |cos| kinks with non-integer p
    const double ref = 0.5115717737740876446;
    const double got = weighted_norm([](double x) { return std::pow(x, 0.3) * std::exp(-x) * std::cos(3 * x); },
                                     NormSpec::plain(1.5, -0.4), 1e-7, {1.0, 0.9, 1.0});
    CHECK(got == Approx(ref).epsilon(1e-7));
}

TEST_CASE("weighted_norm homogeneity") {
    const auto f = [](double x) { return std::complex<double>(std::exp(-x) * (1 - x), std::exp(-x) * x * x * 0.2); };
    const DecayCertificate cert{2.0, 0.5, 1.0};
    for (double p : {1.0, 1.7, 2.0, 4.0}) {
        const NormSpec spec = NormSpec::plain(p, 0.3);
        const double base = weighted_norm(f, spec, 1e-13, cert);
        for (double c : {-3.0, 0.01, 250.0}) {
            const double scaled =
                weighted_norm([&](double x) { return c * f(x); }, spec, 1e-13, {cert.scale * std::abs(c), 0.5, 1.0});
            CHECK(scaled == Approx(std::abs(c) * base).epsilon(1e-12));
        }
    }
}

TEST_CASE("tail cutoff is monotone in tol") {
    const DecayCertificate cert{1.0, 0.5, 1.0};
    for (const NormSpec& spec : {NormSpec::plain(2, 0), NormSpec::plain(1.2, 3.0), NormSpec::mu(3, -0.2, 1.0)}) {
        double prev = 0.0;
        for (double tol = 1e-2; tol > 1e-30; tol *= 0.5) {
            const double X = tail_cutoff(spec, cert, tol);
            CHECK(X >= prev);
            CHECK(tail_bound(spec, cert, X) <= tol);
            prev = X;
        }
    }
    CHECK_THROWS_AS(NormSpec::plain(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(NormSpec::plain(2.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(NormSpec::mu(2.0, -1.5, 0.0), std::invalid_argument);
}

TEST_CASE("hardy_check") {
    const auto e = [](double y) { return std::exp(-y); };
    const HardySides eq = hardy_check(e, 1.0, 0.0, {1.0, 1.0, 1.0});
    CHECK(eq.lhs == Approx(1.0).epsilon(1e-9));
    CHECK(eq.moment == Approx(1.0).epsilon(1e-9));
    CHECK(eq.rhs() == Approx(1.0).epsilon(1e-9));

    const HardySides zero = hardy_check([](double) { return 0.0; }, 2.0, 0.0, {1.0, 1.0, 1.0});
    CHECK(zero.lhs == 0.0);
    CHECK(zero.rhs() == 0.0);

    // p = 2, delta = 1: lhs = (int e^{-2x} x dx)^{1/2} = 1/2, moment = (int y^3 e^{-2y})^{1/2} = sqrt(3/8)
    const HardySides h = hardy_check(e, 2.0, 1.0, {1.0, 1.0, 1.0});
    CHECK(h.lhs == Approx(0.5).epsilon(1e-9));
    CHECK(h.moment == Approx(std::sqrt(3.0 / 8.0)).epsilon(1e-9));
    CHECK(h.lhs <= h.rhs());

    // mpmath reference for a mixture (closed-form inner integral via incomplete gamma)
    const auto mix = [](double y) { return 2 * std::sqrt(y) * std::exp(-1.5 * y) + 0.3 * y * y * std::exp(-0.7 * y); };
    // sup 2 sqrt(y) e^{-y} + sup 0.3 y^2 e^{-0.2 y} < 5
    const HardySides m = hardy_check(mix, 3.0, 0.5, {5.0, 0.5, 1.0});
    CHECK(m.lhs == Approx(2.827690047906832784).epsilon(1e-8));
    CHECK(m.moment == Approx(2.446562292739655027).epsilon(1e-8));
    CHECK(m.rhs() == Approx(4.893124585479310054).epsilon(1e-8));
}
