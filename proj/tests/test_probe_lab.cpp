#include "doctest.h"

#include "laglab/probe_lab.hpp"

#include <cmath>
#include <set>

using namespace laglab;

namespace {

ProbeConfig small_cfg(double alpha, double p, double gamma, int K = 8, int trials = 8) {
    ProbeConfig c;
    c.params = {alpha, p, gamma};
    c.K = K;
    c.trials = trials;
    c.seed = 7;
    return c;
}

} // namespace

TEST_CASE("counter-based generator") {
    CHECK(counter_uniform(1, 2, 3, 4) == counter_uniform(1, 2, 3, 4));
    CHECK(counter_uniform(1, 2, 3, 4) != counter_uniform(2, 2, 3, 4));
    CHECK(counter_uniform(1, 2, 3, 4) != counter_uniform(1, 3, 3, 4));
    double mean = 0.0, lo = 1.0, hi = 0.0;
    std::set<double> seen;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = counter_uniform(42, 0, 0, static_cast<std::uint64_t>(i));
        mean += u / n;
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        seen.insert(u);
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
    CHECK(seen.size() == static_cast<std::size_t>(n));
    // median of the Cauchy law is 0
    int neg = 0;
    for (int i = 0; i < n; ++i) neg += counter_cauchy(3, 1, 1, static_cast<std::uint64_t>(i)) < 0.0;
    CHECK(neg == doctest::Approx(n / 2).epsilon(0.03));
}

TEST_CASE("config validation and search names") {
    ProbeConfig c;
    c.K = 3;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.K = 4;
    c.params = {0.0, 1.0, 0.0};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    for (auto s : {SearchKind::random, SearchKind::coordinate_ascent, SearchKind::power_iteration})
        CHECK(parse_search(search_name(s)) == s);
    CHECK_THROWS_AS(parse_search("simplex"), std::invalid_argument);
}

TEST_CASE("identity multiplier has norm 1") {
    for (auto [a, p, g] : {std::tuple{0.0, 1.5, 0.0}, {0.5, 3.0, 0.4}, {1.0, 1.2, -0.5}}) {
        const NormEstimate e = probe_multiplier(MultiplierSeq::constant(1.0), small_cfg(a, p, g));
        CHECK(e.estimate == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("diagonal p = 2 cases return sup |m_k|") {
    const auto m = MultiplierSeq::table(std::vector<double>{0.3, -1.7, 0.9, 1.2, 0.0, 0.5});
    for (auto search : {SearchKind::random, SearchKind::power_iteration}) {
        ProbeConfig c = small_cfg(0.5, 2.0, 0.5);
        c.search = search;
        CHECK(std::abs(operator_norm_lower_bound(m, c) - 1.7) <= 1e-10);
    }
    // Cesaro means at p = 2 are contractions; sup |m_k| = 1
    const double v = operator_norm_lower_bound(cesaro_seq(8, 0.0), small_cfg(0.0, 2.0, 0.0, 16));
    CHECK(v <= 1.0 + 1e-10);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("power iteration dominates the random search at p = 2") {
    // gamma != alpha: not diagonal, the generalized eigenvalue is the exact sup on the span
    const auto m = cesaro_seq(6, 1.0);
    ProbeConfig c = small_cfg(0.0, 2.0, 0.7, 8, 16);
    const double ascent = operator_norm_lower_bound(m, c);
    c.search = SearchKind::power_iteration;
    const double exact = operator_norm_lower_bound(m, c);
    CHECK(exact >= ascent - 1e-10);
    CHECK(exact >= 1.0 - 1e-12);  // c = e_0 is never damped by m_0 = 1
    c.params.p = 3.0;
    CHECK_THROWS_AS(operator_norm_lower_bound(m, c), std::invalid_argument);
}

TEST_CASE("estimates are reproducible across thread counts and never drop along dyadic K") {
    const auto m = cesaro_seq(8, 0.0);
    ProbeConfig c = small_cfg(1.0, 1.3, 1.0, 32, 12);
    c.threads = 1;
    const NormEstimate a = probe_multiplier(m, c);
    c.threads = 3;
    const NormEstimate b = probe_multiplier(m, c);
    CHECK(a.estimate == b.estimate);
    CHECK(a.source == b.source);
    REQUIRE(a.ladder.size() == 4);
    for (std::size_t i = 1; i < a.ladder.size(); ++i) CHECK(a.ladder[i].second >= a.ladder[i - 1].second);
    CHECK(a.ladder.back().first == 32);
    c.seed = 8;
    CHECK(probe_multiplier(m, c).estimate > 1.0);
}

TEST_CASE("outside the embedding range a warning is attached, not an error") {
    const NormEstimate e = probe_multiplier(MultiplierSeq::constant(1.0), small_cfg(0.0, 4.0, 2.5, 4, 2));
    CHECK_FALSE(e.warnings.empty());
}

TEST_CASE("loglog_fit") {
    const std::vector<double> x{1, 2, 4, 8};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * v * v);
    const SlopeFit f = loglog_fit(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(std::log(3.0)));
    CHECK(f.residual == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS_AS(loglog_fit({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(loglog_fit({1.0, 0.0}, {1.0, 1.0}), std::domain_error);
}

TEST_CASE("cesaro growth report shape") {
    ProbeConfig c = small_cfg(0.0, 1.5, 0.0, 4, 2);
    const ExperimentReport r = cesaro_growth_experiment(0.0, 1.5, 0.0, {2}, c);
    CHECK(r.rows.size() == 1);
    CHECK(r.rows[0][1] == 8.0);
    CHECK(r.diagnostics.count("slope") == 0);
    CHECK(r.diagnostics.at("predicted_slope") == doctest::Approx(1.0 / 3.0 - 0.5));
    CHECK(r.metadata.at("seed") == "7");
}

TEST_CASE("transplantation ratios") {
    ProbeConfig c = small_cfg(0.0, 2.0, 0.0, 4, 4);
    const ExperimentReport same = transplantation_experiment(1.0, 1.0, 3.0, 0.5, {4, 8}, c);
    for (const auto& row : same.rows) CHECK(row[1] == doctest::Approx(1.0).epsilon(1e-12));
    const ExperimentReport parseval = transplantation_experiment(0.0, 2.0, 2.0, 0.0, {4, 8}, c);
    for (const auto& row : parseval.rows) CHECK(std::abs(row[1] - 1.0) <= 1e-8);
    CHECK(parseval.diagnostics.at("in_range") == 1.0);
    CHECK(transplantation_experiment(0.0, 2.0, 4.0, 3.5, {4}, c).diagnostics.at("in_range") == 0.0);
}

TEST_CASE("embedding ratio for the identity") {
    ProbeConfig c = small_cfg(0.0, 1.5, 0.0, 8, 2);
    const ExperimentReport r = embedding_experiment({{"one", MultiplierSeq::constant(1.0)}}, 0.0, 1.5, 0.0, 1.5, c);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.labels[0] == "one");
    CHECK(r.rows[0][2] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.diagnostics.at("in_range") == 1.0);
}

TEST_CASE("kernel profile ratios approach the two limits") {
    for (double alpha : {0.0, 1.0}) {
        const ExperimentReport r = kernel_profile_experiment(alpha, 16);
        const auto& last = r.rows.back();
        CHECK(last[1] == doctest::Approx(r.diagnostics.at("near_limit")).epsilon(1e-3));
        CHECK(last[2] == doctest::Approx(r.diagnostics.at("near_limit")).epsilon(1e-3));
        CHECK(last[3] == doctest::Approx(r.diagnostics.at("far_limit")).epsilon(1e-3));
    }
}
