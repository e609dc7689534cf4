#include "laglab/quadrature.hpp"

#include "laglab/errors.hpp"
#include "laglab/special_functions.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace laglab {

namespace {

constexpr double inner_panel = 1.0 / 4096.0;  // 2^-12
constexpr double rescale_threshold = 1e150;

// Symmetric tridiagonal eigen-decomposition; weights = mu0 * (first eigenvector component)^2.
QuadRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mu0) {
    const auto n = diag.size();
    QuadRule rule;
    if (n == 1) {
        rule.nodes = {diag(0)};
        rule.weights = {mu0};
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw accuracy_error("golub_welsch: tridiagonal eigensolver did not converge");
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double v0 = solver.eigenvectors()(0, i);
        rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
    }
    return rule;
}

// Orthonormal Laguerre recurrence at x up to degree N: returns p_N / p_N' (scale free)
// and log of sum_{k<N} p_k^2 (Christoffel denominator).
struct LaguerreProbe {
    double newton_step;
    double log_christoffel;
};

LaguerreProbe probe_orthonormal_laguerre(int N, double alpha, double x) {
    const double mu0 = std::exp(log_gamma(alpha + 1.0));
    double p_prev = 0.0, dp_prev = 0.0;
    double p = 1.0 / std::sqrt(mu0), dp = 0.0;
    double sum = 0.0;
    double log_scale = 0.0;  // true value = stored * exp(log_scale)
    for (int k = 0; k < N; ++k) {
        sum += p * p;
        const double a_k = 2.0 * k + alpha + 1.0;
        const double b_k = std::sqrt(k * (k + alpha));
        const double b_next = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
        const double p_next = ((x - a_k) * p - b_k * p_prev) / b_next;
        const double dp_next = ((x - a_k) * dp + p - b_k * dp_prev) / b_next;
        p_prev = p;
        dp_prev = dp;
        p = p_next;
        dp = dp_next;
        if (std::abs(p) > rescale_threshold || std::abs(dp) > rescale_threshold) {
            p /= rescale_threshold;
            dp /= rescale_threshold;
            p_prev /= rescale_threshold;
            dp_prev /= rescale_threshold;
            sum /= rescale_threshold * rescale_threshold;
            log_scale += std::log(rescale_threshold);
        }
    }
    return {p / dp, std::log(sum) + 2.0 * log_scale};
}

const std::vector<QuadRule>& legendre_reference_cache(int n) {
    static thread_local std::vector<QuadRule> cache(129);
    if (n < 0 || n > 128) throw std::invalid_argument("legendre_reference_cache: n out of range");
    if (cache[static_cast<std::size_t>(n)].nodes.empty())
        cache[static_cast<std::size_t>(n)] = gauss_legendre_rule(n, -1.0, 1.0);
    return cache;
}

void append_panel(QuadRule& rule, const QuadRule& ref, double lo, double hi, double w) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const double x = mid + half * ref.nodes[i];
        rule.nodes.push_back(x);
        rule.weights.push_back(half * ref.weights[i] * (w == 0.0 ? 1.0 : std::pow(x, w)));
    }
}

} // namespace

double QuadRule::total_mass() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

QuadRule gauss_laguerre_rule(int N, double alpha) {
    if (N < 1 || N > 512) throw std::invalid_argument("gauss_laguerre_rule: N must be in [1, 512]");
    if (!(alpha > -1.0)) throw std::domain_error("gauss_laguerre_rule: alpha must exceed -1");
    Eigen::VectorXd diag(N), off(std::max(N - 1, 0));
    for (int k = 0; k < N; ++k) diag(k) = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < N; ++k) off(k - 1) = std::sqrt(k * (k + alpha));
    const double log_mu0 = log_gamma(alpha + 1.0);
    QuadRule rule = golub_welsch(diag, off, std::exp(log_mu0));

    for (std::size_t i = 0; i < rule.size(); ++i) {
        const LaguerreProbe probe = probe_orthonormal_laguerre(N, alpha, rule.nodes[i]);
        const double gap = (i + 1 < rule.size()) ? rule.nodes[i + 1] - rule.nodes[i]
                                                 : rule.nodes[i] - (i > 0 ? rule.nodes[i - 1] : 0.0);
        if (std::isfinite(probe.newton_step) && std::abs(probe.newton_step) < 0.1 * std::abs(gap))
            rule.nodes[i] -= probe.newton_step;
        const LaguerreProbe refined = probe_orthonormal_laguerre(N, alpha, rule.nodes[i]);
        rule.weights[i] = std::exp(-refined.log_christoffel);
    }
    rule.exactness = 2 * N - 1;
    rule.weight_convention = "x^alpha e^{-x} dx on (0, inf)";
    return rule;
}

QuadRule gauss_legendre_rule(int N, double a, double b) {
    if (N < 1) throw std::invalid_argument("gauss_legendre_rule: N must be positive");
    if (!(a < b)) throw std::invalid_argument("gauss_legendre_rule: requires a < b");
    QuadRule rule;
    rule.nodes.resize(static_cast<std::size_t>(N));
    rule.weights.resize(static_cast<std::size_t>(N));
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    const int m = (N + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < N; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            dp = N * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // Recompute derivative at the converged root for the weight.
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < N; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        dp = N * (z * p0 - p1) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(N - 1 - i);
        rule.nodes[lo] = mid - half * z;
        rule.nodes[hi] = mid + half * z;
        rule.weights[lo] = half * w;
        rule.weights[hi] = half * w;
    }
    if (N % 2 == 1) rule.nodes[static_cast<std::size_t>(N / 2)] = mid;
    rule.exactness = 2 * N - 1;
    rule.weight_convention = "dx on [a, b]";
    return rule;
}

QuadRule gauss_jacobi_rule(int N, double a, double b) {
    if (N < 1) throw std::invalid_argument("gauss_jacobi_rule: N must be positive");
    if (!(a > -1.0 && b > -1.0)) throw std::domain_error("gauss_jacobi_rule: exponents must exceed -1");
    const double ab = a + b;
    Eigen::VectorXd diag(N), off(std::max(N - 1, 0));
    for (int n = 0; n < N; ++n) {
        const double s = 2.0 * n + ab;
        diag(n) = (n == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    for (int n = 1; n < N; ++n) {
        const double s = 2.0 * n + ab;
        double beta;
        if (n == 1)
            beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        else
            beta = 4.0 * n * (n + a) * (n + b) * (n + ab) / (s * s * (s + 1.0) * (s - 1.0));
        off(n - 1) = std::sqrt(beta);
    }
    const double log_mu0 = (ab + 1.0) * std::log(2.0) + log_gamma(a + 1.0) + log_gamma(b + 1.0) -
                           log_gamma(ab + 2.0);
    QuadRule rule = golub_welsch(diag, off, std::exp(log_mu0));
    rule.exactness = 2 * N - 1;
    rule.weight_convention = "(1-t)^a (1+t)^b dt on [-1, 1]";
    return rule;
}

QuadRule weighted_composite_rule(double w, double x_max, double max_panel_width, int nodes_per_panel) {
    if (!(w > -1.0)) throw std::domain_error("weighted_composite_rule: weight exponent must exceed -1");
    if (!(x_max > 0.0)) throw std::invalid_argument("weighted_composite_rule: x_max must be positive");
    if (!(max_panel_width > 0.0)) throw std::invalid_argument("weighted_composite_rule: bad panel width");
    QuadRule rule;
    rule.weight_convention = "x^w dx on [0, X]";

    const double h0 = std::min(inner_panel, x_max);
    const QuadRule jac = gauss_jacobi_rule(nodes_per_panel, 0.0, w);
    const double scale = std::pow(0.5 * h0, w + 1.0);
    for (std::size_t i = 0; i < jac.size(); ++i) {
        rule.nodes.push_back(0.5 * h0 * (1.0 + jac.nodes[i]));
        rule.weights.push_back(scale * jac.weights[i]);
    }

    const QuadRule& ref = legendre_reference_cache(nodes_per_panel)[static_cast<std::size_t>(nodes_per_panel)];
    for (double lo = h0; lo < x_max;) {
        const double hi = std::min(2.0 * lo, x_max);
        const int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_panel_width - 1e-12)));
        const double step = (hi - lo) / pieces;
        for (int j = 0; j < pieces; ++j)
            append_panel(rule, ref, lo + j * step, (j + 1 == pieces) ? hi : lo + (j + 1) * step, w);
        lo = hi;
    }
    return rule;
}

void write_csv(const QuadRule& rule, std::ostream& out) {
    out << "node,weight\n";
    out.precision(17);
    for (std::size_t i = 0; i < rule.size(); ++i) out << rule.nodes[i] << ',' << rule.weights[i] << '\n';
}

NormSpec NormSpec::plain(double p, double gamma) {
    NormSpec s{p, gamma, MeasureKind::plain, 0.0};
    s.validate();
    return s;
}

NormSpec NormSpec::mu(double p, double delta, double alpha) {
    NormSpec s{p, delta, MeasureKind::mu_alpha, alpha};
    s.validate();
    return s;
}

double NormSpec::weight_exponent() const {
    return measure == MeasureKind::plain ? exponent : 2.0 * exponent + 2.0 * alpha + 1.0;
}

void NormSpec::validate() const {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("NormSpec: p must be in [1, inf)");
    if (!(weight_exponent() > -1.0))
        throw std::invalid_argument("NormSpec: weight exponent must exceed -1");
}

double tail_bound(const NormSpec& spec, const DecayCertificate& cert, double X) {
    // int_X^inf C^p e^{-p c x^s} x^w dx = C^p / s * (pc)^{-(w+1)/s} Gamma((w+1)/s, pc X^s)
    const double w = spec.weight_exponent();
    const double a = spec.p * cert.rate;
    const double sigma = cert.power;
    const double shape = (w + 1.0) / sigma;
    const double z = a * std::pow(std::max(X, 0.0), sigma);
    const double log_prefactor = spec.p * std::log(cert.scale) - std::log(sigma) - shape * std::log(a);
    const double q = boost::math::gamma_q(shape, z);
    if (q == 0.0) return 0.0;
    return std::exp(log_prefactor + log_gamma(shape) + std::log(q));
}

double tail_cutoff(const NormSpec& spec, const DecayCertificate& cert, double abs_tol) {
    if (!(cert.rate > 0.0 && cert.power > 0.0 && cert.scale > 0.0))
        throw std::invalid_argument("tail_cutoff: certificate must have positive scale, rate and power");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("tail_cutoff: tolerance must be positive");
    if (tail_bound(spec, cert, 0.0) <= abs_tol) return 0.0;
    double hi = 1.0;
    while (tail_bound(spec, cert, hi) > abs_tol) {
        hi *= 2.0;
        if (hi > 1e12) throw accuracy_error("tail_cutoff: certificate cannot force tail below tol");
    }
    double lo = 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (tail_bound(spec, cert, mid) > abs_tol ? lo : hi) = mid;
    }
    return hi;
}

namespace {

double power_integral(const ComplexFn& f, double p, double w, double X, double width) {
    const QuadRule rule = weighted_composite_rule(w, X, width);
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double term = rule.weights[i] * std::pow(std::abs(f(rule.nodes[i])), p) - comp;
        const double t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    return sum;
}

} // namespace

double weighted_norm(const ComplexFn& f, const NormSpec& spec, double tol, const DecayCertificate& cert) {
    spec.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("weighted_norm: tol must be positive");
    const double p = spec.p;
    const double w = spec.weight_exponent();
    const double cp = std::pow(cert.scale, p);

    double X = tail_cutoff(spec, cert, tol * cp);
    if (X == 0.0) X = 1.0;
    double width = 1.0;
    double I = power_integral(f, p, w, X, width);
    for (int iter = 0;; ++iter) {
        if (I == 0.0) return 0.0;
        const double target = 0.25 * tol * p * I;
        if (tail_bound(spec, cert, X) <= target) break;
        if (iter == 8) throw accuracy_error("weighted_norm: tail certificate cannot reach tol");
        X = std::max(X, tail_cutoff(spec, cert, target));
        I = power_integral(f, p, w, X, width);
    }
    for (;;) {
        const double refined = power_integral(f, p, w, X, 0.5 * width);
        const bool converged = std::abs(refined - I) <= 0.25 * tol * p * std::abs(refined);
        I = refined;
        width *= 0.5;
        if (converged) break;
        if (width < 1.0 / 64.0) throw accuracy_error("weighted_norm: panel refinement did not converge");
    }
    return std::pow(I, 1.0 / p);
}

HardySides hardy_check(const RealFn& f, double p, double delta, const DecayCertificate& cert, double tol) {
    if (!(p >= 1.0)) throw std::invalid_argument("hardy_check: p must be >= 1");
    if (!(delta > -1.0)) throw std::invalid_argument("hardy_check: delta must exceed -1");
    if (!(cert.power >= 1.0)) throw std::invalid_argument("hardy_check: certificate power must be >= 1");

    HardySides out;
    out.constant = p / (delta + 1.0);

    // (y f(y)) <= C (2/(c s))^{1/s} e^{-1/s} e^{-(c/2) y^s}
    const double s = cert.power;
    const DecayCertificate moment_cert{
        cert.scale * std::pow(2.0 / (cert.rate * s), 1.0 / s) * std::exp(-1.0 / s), 0.5 * cert.rate, s};
    out.moment = weighted_norm([&](double y) { return std::complex<double>(y * f(y), 0.0); },
                               NormSpec::plain(p, delta), tol, moment_cert);

    // f <= C' e^{-c y} with C' = C (s = 1) or C e^c (s > 1), hence F(x) <= (C'/c) e^{-c x}.
    const double c1 = (s == 1.0) ? cert.scale : cert.scale * std::exp(cert.rate);
    const DecayCertificate f_cert{c1, cert.rate, 1.0};
    const DecayCertificate F_cert{c1 / cert.rate, cert.rate, 1.0};
    const NormSpec outer = NormSpec::plain(p, delta);

    // F at the last node: integrate f out to where its own tail is negligible.
    const auto lhs_for = [&](double X, double width) {
        const QuadRule rule = weighted_composite_rule(delta, X, width);
        const double X2 = std::max(X, tail_cutoff(NormSpec::plain(1.0, 0.0), f_cert, 1e-300));
        const QuadRule gap16 = gauss_legendre_rule(16, -1.0, 1.0);
        const auto segment = [&](double a, double b) {
            if (b <= a) return 0.0;
            const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
            double acc = 0.0;
            for (std::size_t i = 0; i < gap16.size(); ++i) acc += gap16.weights[i] * f(mid + half * gap16.nodes[i]);
            return half * acc;
        };
        const std::size_t n = rule.size();
        double F = 0.0;
        for (double a = rule.nodes[n - 1]; a < X2;) {
            const double b = std::min(X2, a + width);
            F += segment(a, b);
            a = b;
        }
        double sum = 0.0;
        for (std::size_t i = n; i-- > 0;) {
            if (i + 1 < n) F += segment(rule.nodes[i], rule.nodes[i + 1]);
            sum += rule.weights[i] * std::pow(std::max(F, 0.0), p);
        }
        return sum;
    };

    double X = tail_cutoff(outer, F_cert, tol * std::pow(F_cert.scale, p));
    if (X == 0.0) X = 1.0;
    double width = 1.0;
    double I = lhs_for(X, width);
    for (int iter = 0; I > 0.0; ++iter) {
        const double target = 0.25 * tol * p * I;
        if (tail_bound(outer, F_cert, X) <= target) break;
        if (iter == 8) throw accuracy_error("hardy_check: tail certificate cannot reach tol");
        X = std::max(X, tail_cutoff(outer, F_cert, target));
        I = lhs_for(X, width);
    }
    for (int iter = 0; I > 0.0; ++iter) {
        const double refined = lhs_for(X, 0.5 * width);
        const bool converged = std::abs(refined - I) <= 0.25 * tol * p * refined;
        I = refined;
        width *= 0.5;
        if (converged) break;
        if (iter == 6) throw accuracy_error("hardy_check: refinement did not converge");
    }
    out.lhs = std::pow(I, 1.0 / p);
    return out;
}

} // namespace laglab
