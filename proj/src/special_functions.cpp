#include "laglab/special_functions.hpp"

#include "laglab/errors.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace laglab {

namespace {

constexpr double rescale_threshold = 1e150;
constexpr int bessel_term_budget = 200;
// Above this argument the ascending series loses more than ~1e-13 to cancellation.
constexpr double bessel_series_limit = 8.0;

void require_alpha(double alpha) {
    if (!(alpha > -1.0)) throw std::domain_error("alpha must exceed -1");
}

void check_domain(const SystemTag& tag, double x) {
    require_alpha(tag.alpha);
    if (x < 0.0 || std::isnan(x)) throw std::domain_error("x must be non-negative");
    if (tag.family == Family::phi && x == 0.0)
        throw std::domain_error("phi system requires x > 0");
    if (tag.family == Family::script_l && x == 0.0 && tag.alpha < 0.0)
        throw std::domain_error("script-L at x = 0 requires alpha >= 0");
}

double laguerre_argument(const SystemTag& tag, double x) {
    return (tag.family == Family::phi || tag.family == Family::psi) ? x * x : x;
}

// Factor multiplying (k!/Gamma(k+alpha+1))^{1/2} L_k^alpha(arg) e^{-arg/2}.
double system_prefactor(const SystemTag& tag, double x) {
    switch (tag.family) {
    case Family::l: return 1.0;
    case Family::script_l: return std::pow(x, 0.5 * tag.alpha);
    case Family::phi: return std::pow(x, tag.alpha) * std::sqrt(2.0 * x);
    case Family::psi: return std::sqrt(2.0);
    }
    return 1.0;
}

} // namespace

std::string_view family_name(Family f) {
    switch (f) {
    case Family::l: return "l";
    case Family::script_l: return "script-L";
    case Family::phi: return "phi";
    case Family::psi: return "psi";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    if (name == "l") return Family::l;
    if (name == "script-L" || name == "script-l" || name == "script_l" || name == "L") return Family::script_l;
    if (name == "phi") return Family::phi;
    if (name == "psi") return Family::psi;
    throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

SystemTag SystemTag::make(Family family, double alpha) {
    require_alpha(alpha);
    return SystemTag{family, alpha};
}

double measure_exponent(const SystemTag& tag) {
    switch (tag.family) {
    case Family::l: return tag.alpha;
    case Family::script_l:
    case Family::phi: return 0.0;
    case Family::psi: return 2.0 * tag.alpha + 1.0;
    }
    return 0.0;
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
    return boost::math::lgamma(x);
}

double binom_A(int j, double delta) {
    if (j < 0) throw std::domain_error("binom_A: j must be non-negative");
    double a = 1.0;
    for (int i = 1; i <= j; ++i) a *= (i + delta) / i;
    return a;
}

double laguerre_poly(int k, double alpha, double x) {
    if (k < 0) throw std::domain_error("laguerre_poly: k must be non-negative");
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = alpha + 1.0 - x;
    for (int n = 1; n < k; ++n) {
        const double next = ((2.0 * n + 1.0 + alpha - x) * cur - (n + alpha) * prev) / (n + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> damped_laguerre_values(double alpha, double x, int K) {
    if (K < 0) return {};
    std::vector<double> out(static_cast<std::size_t>(K) + 1);
    // L_k = v_k * exp(log_scale); output carries exp(log_scale - x/2).
    double log_scale = 0.0;
    double factor = std::exp(-0.5 * x);
    double prev = 1.0;
    out[0] = prev * factor;
    if (K == 0) return out;
    double cur = alpha + 1.0 - x;
    out[1] = cur * factor;
    for (int n = 1; n < K; ++n) {
        double next = ((2.0 * n + 1.0 + alpha - x) * cur - (n + alpha) * prev) / (n + 1.0);
        prev = cur;
        cur = next;
        if (std::abs(cur) > rescale_threshold) {
            cur /= rescale_threshold;
            prev /= rescale_threshold;
            log_scale += std::log(rescale_threshold);
            factor = std::exp(log_scale - 0.5 * x);
        }
        out[static_cast<std::size_t>(n) + 1] = cur * factor;
    }
    return out;
}

std::vector<double> basis_values(const SystemTag& tag, int K, double x) {
    check_domain(tag, x);
    std::vector<double> v = damped_laguerre_values(tag.alpha, laguerre_argument(tag, x), K);
    // (k!/Gamma(k+alpha+1))^{1/2}, advanced by the ratio sqrt(k/(k+alpha)).
    double norm = std::exp(-0.5 * log_gamma(tag.alpha + 1.0)) * system_prefactor(tag, x);
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k > 0) norm *= std::sqrt(static_cast<double>(k) / (static_cast<double>(k) + tag.alpha));
        v[k] *= norm;
    }
    return v;
}

double laguerre_fn(const SystemTag& tag, int k, double x) {
    if (k < 0) throw std::domain_error("laguerre_fn: k must be non-negative");
    check_domain(tag, x);
    const double damped = damped_laguerre_values(tag.alpha, laguerre_argument(tag, x), k).back();
    const double log_norm = 0.5 * (log_gamma(k + 1.0) - log_gamma(k + tag.alpha + 1.0));
    return system_prefactor(tag, x) * std::exp(log_norm) * damped;
}

double bessel_normalized(double beta, double z) {
    if (!(beta > -1.0)) throw std::domain_error("bessel_normalized: beta must exceed -1");
    if (z < 0.0 || std::isnan(z)) throw std::domain_error("bessel_normalized: z must be non-negative");
    if (z > bessel_z_max)
        throw accuracy_error("bessel_normalized: z = " + std::to_string(z) + " exceeds documented Z_max");

    if (z <= bessel_series_limit) {
        const double q = -0.25 * z * z;
        double term = 1.0;
        double sum = 1.0;
        for (int m = 1; m <= bessel_term_budget; ++m) {
            term *= q / (m * (beta + m));
            sum += term;
            if (std::abs(term) <= std::numeric_limits<double>::epsilon() * std::abs(sum) && m > z)
                return sum;
        }
        throw accuracy_error("bessel_normalized: series did not converge within term budget");
    }
    const double j = boost::math::cyl_bessel_j(beta, z);
    return std::exp(log_gamma(beta + 1.0) - beta * std::log(0.5 * z)) * j;
}

double theta_distance(double x, double y, double theta) {
    const double d = x - y;
    const double s = std::sin(0.5 * theta);
    return std::sqrt(d * d + 4.0 * x * y * s * s);
}

} // namespace laglab
