#include "laglab/expansion_engine.hpp"

#include "laglab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace laglab {

namespace {

struct KahanSum {
    cplx sum{};
    cplx comp{};
    void add(cplx v) {
        const cplx y = v - comp;
        const cplx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

void require_K(int K) {
    if (K < 0) throw std::invalid_argument("expansion: K must be non-negative");
}

// a_k by Gauss-Laguerre with N nodes: sum_i w_i e^{x_i} f(x_i) l_k(x_i).
std::vector<cplx> laguerre_coefficients(const ComplexFn& f, double alpha, int K, int N) {
    const QuadRule rule = gauss_laguerre_rule(N, alpha);
    const SystemTag tag{Family::l, alpha};
    std::vector<KahanSum> acc(static_cast<std::size_t>(K) + 1);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        if (!(rule.weights[i] > 0.0)) continue;
        const double x = rule.nodes[i];
        const double w = std::exp(std::log(rule.weights[i]) + x);
        const cplx fx = f(x);
        if (fx == cplx{0.0}) continue;
        const std::vector<double> b = basis_values(tag, K, x);
        for (int k = 0; k <= K; ++k) acc[static_cast<std::size_t>(k)].add(w * fx * b[static_cast<std::size_t>(k)]);
    }
    std::vector<cplx> out;
    out.reserve(acc.size());
    for (const auto& a : acc) out.push_back(a.sum);
    return out;
}

std::vector<cplx> composite_coefficients(const ComplexFn& f, const SystemTag& tag, int K, double x_max,
                                         double width) {
    const QuadRule rule = weighted_composite_rule(measure_exponent(tag), x_max, width, 32);
    std::vector<KahanSum> acc(static_cast<std::size_t>(K) + 1);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const cplx fx = f(rule.nodes[i]) * rule.weights[i];
        if (fx == cplx{0.0}) continue;
        const std::vector<double> b = basis_values(tag, K, rule.nodes[i]);
        for (int k = 0; k <= K; ++k) acc[static_cast<std::size_t>(k)].add(fx * b[static_cast<std::size_t>(k)]);
    }
    std::vector<cplx> out;
    out.reserve(acc.size());
    for (const auto& a : acc) out.push_back(a.sum);
    return out;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// log of sup_x x^a exp(-b x^sigma) = (a / sigma) log(a / (b sigma e)); 0 when a = 0.
double log_power_exp_sup(double a, double b, double sigma) {
    if (a == 0.0) return 0.0;
    return a / sigma * std::log(a / (b * sigma * std::exp(1.0)));
}

// log of sum_j A_{k-j}^{alpha+j} (4j/e)^j / j!, which bounds e^{-x/4} |L_k^alpha(x)|.
double log_laguerre_envelope(int k, double alpha) {
    double m = -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    for (int j = 0; j <= k; ++j) {
        const double lb = log_gamma(k + alpha + 1.0) - log_gamma(k - j + 1.0) - log_gamma(alpha + j + 1.0);
        const double lp = j == 0 ? 0.0 : j * std::log(4.0 * j / std::exp(1.0)) - log_gamma(j + 1.0);
        terms.push_back(lb + lp);
        m = std::max(m, lb + lp);
    }
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    return m + std::log(s);
}

} // namespace

Expansion::Expansion(SystemTag tag, std::vector<cplx> coeffs) : tag_(tag), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("Expansion: need at least one coefficient");
    if (!(tag_.alpha > -1.0)) throw std::domain_error("Expansion: alpha must exceed -1");
}

double Expansion::l2() const {
    double s = 0.0;
    for (const cplx& c : coeffs_) s += std::norm(c);
    return std::sqrt(s);
}

Expansion unit_expansion(const SystemTag& tag, int k, int K) {
    require_K(K);
    if (k < 0 || k > K) throw std::out_of_range("unit_expansion: k outside 0..K");
    std::vector<cplx> c(static_cast<std::size_t>(K) + 1, cplx{0.0});
    c[static_cast<std::size_t>(k)] = 1.0;
    return Expansion(tag, std::move(c));
}

Expansion analyze(const ComplexFn& f, const SystemTag& tag, int K, double tol,
                  const std::optional<DecayCertificate>& cert) {
    require_K(K);
    if (!(tol > 0.0)) throw std::invalid_argument("analyze: tol must be positive");
    if (tag.family == Family::l) {
        if (K > 511) throw std::invalid_argument("analyze: K <= 511 for Gauss-Laguerre analysis");
        const int n1 = std::max(K + 1, std::min(2 * K + 16, 384));
        const int n2 = 512;
        std::vector<cplx> a1 = laguerre_coefficients(f, tag.alpha, K, n1);
        if (n1 == n2) return Expansion(tag, std::move(a1));
        std::vector<cplx> a2 = laguerre_coefficients(f, tag.alpha, K, n2);
        if (max_diff(a1, a2) > tol)
            throw accuracy_error("analyze: Gauss-Laguerre coefficients disagree across node counts by " +
                                 std::to_string(max_diff(a1, a2)));
        return Expansion(tag, std::move(a2));
    }
    if (!cert) throw std::invalid_argument("analyze: a decay certificate is required for this system");
    // |int_X^inf f b_k x^w| <= (int_X^inf |f|^2 x^w)^{1/2} since ||b_k|| = 1
    const double w = measure_exponent(tag);
    const double x_max = tail_cutoff(NormSpec::plain(2.0, w), *cert, 0.25 * tol * tol);
    double width = 1.0;
    std::vector<cplx> prev = composite_coefficients(f, tag, K, x_max, width);
    while (width > 1.0 / 64) {
        width /= 2;
        std::vector<cplx> next = composite_coefficients(f, tag, K, x_max, width);
        const double d = max_diff(prev, next);
        prev = std::move(next);
        if (d <= 0.5 * tol) return Expansion(tag, std::move(prev));
    }
    throw accuracy_error("analyze: composite quadrature did not settle at the finest panel width");
}

cplx synthesize(const Expansion& e, double x) {
    const std::vector<double> b = basis_values(e.tag(), e.K(), x);
    KahanSum acc;
    for (std::size_t k = 0; k < b.size(); ++k) acc.add(e.coeffs()[k] * b[k]);
    return acc.sum;
}

DecayCertificate decay_certificate(const Expansion& e) {
    const double alpha = e.tag().alpha;
    // |l_k(x)| <= n_k S_k e^{-x/4}
    double rate = 0.25;
    double power = 1.0;
    double log_extra = 0.0;
    double log_const = 0.0;
    switch (e.tag().family) {
    case Family::l:
        break;
    case Family::script_l:
        if (alpha < 0.0) throw std::domain_error("decay_certificate: script-L needs alpha >= 0");
        log_extra = log_power_exp_sup(alpha / 2.0, 0.125, 1.0);
        rate = 0.125;
        break;
    case Family::psi:
        power = 2.0;
        log_const = 0.5 * std::log(2.0);
        break;
    case Family::phi:
        if (alpha < -0.5) throw std::domain_error("decay_certificate: phi needs alpha >= -1/2");
        power = 2.0;
        log_const = 0.5 * std::log(2.0);
        log_extra = log_power_exp_sup(alpha + 0.5, 0.125, 2.0);
        rate = 0.125;
        break;
    }
    double scale = 0.0;
    for (int k = 0; k <= e.K(); ++k) {
        const double c = std::abs(e.coeffs()[static_cast<std::size_t>(k)]);
        if (c == 0.0) continue;
        const double log_norm = 0.5 * (log_gamma(k + 1.0) - log_gamma(k + alpha + 1.0));
        scale += c * std::exp(log_norm + log_laguerre_envelope(k, alpha) + log_extra + log_const);
    }
    return {scale, rate, power};
}

Expansion apply_multiplier(const MultiplierSeq& m, const Expansion& e) {
    std::vector<cplx> c = e.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= m(static_cast<long>(k));
    return Expansion(e.tag(), std::move(c));
}

Expansion transplant(const Expansion& e, double alpha) {
    if (e.tag().family != Family::script_l)
        throw std::invalid_argument("transplant: expansion must be in the script-L system");
    return Expansion(SystemTag{Family::script_l, alpha}, e.coeffs());
}

void MultiplierSpaceParams::validate() const {
    if (!(alpha > -1.0)) throw std::invalid_argument("multiplier space: alpha must exceed -1");
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("multiplier space: need 1 < p < inf");
    if (!(gamma > -1.0 && gamma < p * (alpha + 1.0) - 1.0))
        throw std::invalid_argument("multiplier space: need -1 < gamma < p(alpha+1) - 1");
}

SpaceRequest parse_space_request(std::string_view name) {
    if (name == "dual") return SpaceRequest::dual;
    if (name == "script-shift") return SpaceRequest::script_shift;
    if (name == "phi-shift") return SpaceRequest::phi_shift;
    if (name == "thm11-range") return SpaceRequest::thm11_range;
    if (name == "thm41-range") return SpaceRequest::thm41_range;
    if (name == "lep-range") return SpaceRequest::lep_range;
    throw std::invalid_argument("unknown space request '" + std::string(name) + "'");
}

MultiplierSpaceParams dual_params(const MultiplierSpaceParams& s) {
    s.validate();
    const double pp = s.p / (s.p - 1.0);
    return {s.alpha, pp, s.alpha * pp - s.gamma * pp / s.p};
}

MultiplierSpaceParams script_shift(const MultiplierSpaceParams& s) {
    s.validate();
    return {s.alpha, s.p, s.gamma + s.alpha * s.p / 2.0};
}

MultiplierSpaceParams phi_shift(const MultiplierSpaceParams& s) {
    s.validate();
    return {s.alpha, s.p, s.gamma + s.alpha * s.p / 2.0 + s.p / 4.0 - 0.5};
}

bool thm11_range(const MultiplierSpaceParams& s) {
    s.validate();
    if (s.alpha < 0.0) return false;
    const double g = s.gamma - s.alpha;
    const double a1 = s.alpha + 1.0;
    return a1 * std::max(-s.p / 2.0, -1.0) < g && g < a1 * std::min(s.p / 2.0, s.p - 1.0);
}

bool lep_range(const MultiplierSpaceParams& s) {
    s.validate();
    if (s.alpha < 0.0) return false;
    const double lo = (2.0 * s.alpha + 2.0) / (s.alpha + 2.0);
    const double hi = s.alpha == 0.0 ? std::numeric_limits<double>::infinity() : (2.0 * s.alpha + 2.0) / s.alpha;
    return lo < s.p && s.p < hi;
}

bool transplant_range(double alpha, double beta, double p, double delta) {
    if (!(alpha > -1.0 && beta > -1.0)) throw std::invalid_argument("transplant_range: alpha, beta must exceed -1");
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("transplant_range: need 1 < p < inf");
    const double eps = std::min(alpha, beta);
    if (eps >= 0.0) return -1.0 < delta && delta < p - 1.0;
    return -1.0 - eps * p / 2.0 < delta && delta < p - 1.0 + eps * p / 2.0;
}

std::variant<MultiplierSpaceParams, bool> space_arithmetic(const MultiplierSpaceParams& s, SpaceRequest r, double beta) {
    switch (r) {
    case SpaceRequest::dual: return dual_params(s);
    case SpaceRequest::script_shift: return script_shift(s);
    case SpaceRequest::phi_shift: return phi_shift(s);
    case SpaceRequest::thm11_range: return thm11_range(s);
    case SpaceRequest::thm41_range: return transplant_range(s.alpha, beta, s.p, s.gamma);
    case SpaceRequest::lep_range: return lep_range(s);
    }
    throw std::logic_error("space_arithmetic: unhandled request");
}

std::pair<double, double> projection_formula_check(int k, double mu, double nu, double x) {
    if (k < 0) throw std::invalid_argument("projection_formula_check: k must be non-negative");
    if (!(mu > -1.0)) throw std::invalid_argument("projection_formula_check: mu must exceed -1");
    if (!(nu > 0.0)) throw std::invalid_argument("projection_formula_check: nu must be positive");
    const double lhs = laguerre_poly(k, mu + nu, x);
    const double log_c = log_gamma(k + mu + nu + 1.0) - log_gamma(k + mu + 1.0);
    const int n = k + 48;
    double integral = 0.0;
    if (nu >= 1.0) {
        // y = (1 + t)/2: the weight (1-t)^{nu-1}(1+t)^mu absorbs both endpoint factors
        const QuadRule r = gauss_jacobi_rule(n, nu - 1.0, mu);
        integral = std::pow(2.0, -mu - nu) * r.integrate([&](double t) { return laguerre_poly(k, mu, x * (1.0 + t) / 2.0); });
    } else {
        // y = 1 - u^{1/nu}: (1-y)^{nu-1} dy = du / nu. What is left has y^mu ~ ((1-u)/nu)^mu
        // at u = 1 (Gauss-Jacobi on [1/2, 1]) and powers u^{j/nu} at u = 0 (geometric panels).
        auto g = [&](double u) {
            const double y = 1.0 - std::pow(u, 1.0 / nu);
            return laguerre_poly(k, mu, x * y);
        };
        const QuadRule upper = gauss_jacobi_rule(n, mu, 0.0);
        integral = std::pow(2.0, -2.0 * mu - 2.0) * upper.integrate([&](double t) {
            const double u = 0.75 + t / 4.0;
            const double y = 1.0 - std::pow(u, 1.0 / nu);
            const double ratio = u < 1.0 ? y / (1.0 - u) : 1.0 / nu;
            return std::pow(ratio, mu) * g(u);
        });
        double hi = 0.5;
        while (hi > 1e-30) {
            const QuadRule panel = gauss_legendre_rule(24, hi / 4.0, hi);
            integral += panel.integrate([&](double u) { return std::pow(1.0 - std::pow(u, 1.0 / nu), mu) * g(u); });
            hi /= 4.0;
        }
        integral /= nu;
    }
    // Gamma(nu) can be huge or tiny; combine in log space through the ratio
    const double rhs = std::exp(log_c - log_gamma(nu)) * integral;
    return {lhs, rhs};
}

} // namespace laglab
