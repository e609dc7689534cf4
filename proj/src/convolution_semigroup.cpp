#include "laglab/convolution_semigroup.hpp"

#include "laglab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace laglab {

namespace {

constexpr double half_pi = std::numbers::pi / 2.0;

// Reference rules on [-1, 1], cached per thread since the inner loops ask for them repeatedly.
const QuadRule& jacobi_ref(int n, double a, double b) {
    thread_local std::map<std::tuple<int, double, double>, QuadRule> cache;
    auto key = std::make_tuple(n, a, b);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, gauss_jacobi_rule(n, a, b)).first;
    return it->second;
}

const QuadRule& legendre_ref(int n) {
    return jacobi_ref(n, 0.0, 0.0);
}

// int_a^b g with Gauss-Legendre
template <class G>
double legendre_panel(const G& g, double a, double b, int n) {
    const QuadRule& r = legendre_ref(n);
    const double h = (b - a) / 2.0, c = (a + b) / 2.0;
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * g(c + h * r.nodes[i]);
    return h * s;
}

// int_0^b g(x) x^w dx with the power folded into Gauss-Jacobi
template <class G>
double jacobi_left_panel(const G& g, double w, double b, int n) {
    const QuadRule& r = jacobi_ref(n, 0.0, w);
    const double h = b / 2.0;
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * g(h * (1.0 + r.nodes[i]));
    return std::pow(h, w + 1.0) * s;
}

void require_psi(const Expansion& e, const char* who) {
    if (e.tag().family != Family::psi) throw std::invalid_argument(std::string(who) + ": expansion must be in the psi system");
}

void require_alpha_nonneg(double alpha, const char* who) {
    if (!(alpha >= 0.0)) throw std::domain_error(std::string(who) + ": alpha must be >= 0");
}

double translation_constant(double alpha) {
    return std::exp(log_gamma(alpha + 1.0) - log_gamma(alpha + 0.5)) / std::sqrt(std::numbers::pi);
}

// sum_k coef_k L_k^alpha(y^2) e^{-y^2/2}
double damped_series(double alpha, double y, const std::vector<double>& coef) {
    const int K = static_cast<int>(coef.size()) - 1;
    const std::vector<double> d = damped_laguerre_values(alpha, y * y, K);
    double s = 0.0, c = 0.0;
    for (int k = 0; k <= K; ++k) {
        const double v = coef[static_cast<std::size_t>(k)] * d[static_cast<std::size_t>(k)] - c;
        const double t = s + v;
        c = (t - s) - v;
        s = t;
    }
    return s;
}

} // namespace

double poisson_constant(double alpha) {
    return 2.0 / std::exp(log_gamma(alpha + 1.0));
}

int certified_truncation(double alpha, double s, double r, double scale, double tol, int max_K) {
    require_alpha_nonneg(alpha, "certified_truncation");
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("certified_truncation: r must lie in (0,1)");
    if (!(tol > 0.0)) throw std::invalid_argument("certified_truncation: tol must be positive");
    if (scale == 0.0) return 0;
    // log of scale * lambda_k^s r^{lambda_k} A_k^alpha
    const double log_r = std::log(r);
    double log_A = 0.0;
    auto log_term = [&](int k) { return std::log(scale) + s * std::log(eigenvalue(alpha, k)) + eigenvalue(alpha, k) * log_r; };
    for (int K = 0; K <= max_K; ++K) {
        const int k1 = K + 1;
        const double log_A1 = log_A + std::log((k1 + alpha) / k1);
        const double ratio = std::pow(eigenvalue(alpha, k1 + 1) / eigenvalue(alpha, k1), s) * (k1 + 1 + alpha) / (k1 + 1) *
                             std::pow(r, 4.0);
        if (ratio < 1.0) {
            const double tail = std::exp(log_term(k1) + log_A1) / (1.0 - ratio);
            if (tail <= tol) return K;
        }
        log_A = log_A1;
    }
    throw accuracy_error("certified_truncation: r too close to 1 for the truncation budget");
}

PoissonState PoissonState::make(double alpha, double t, double tail_tol) {
    require_alpha_nonneg(alpha, "PoissonState");
    if (!(t > 0.0)) throw std::invalid_argument("PoissonState: t must be positive");
    PoissonState st;
    st.alpha = alpha;
    st.t = t;
    st.tail_tol = tail_tol;
    st.K = certified_truncation(alpha, 0.0, std::exp(-t), poisson_constant(alpha), tail_tol);
    return st;
}

double PoissonState::r() const {
    return std::exp(-t);
}

double poisson_kernel(const PoissonState& st, double y) {
    if (y < 0.0) throw std::domain_error("poisson_kernel: y must be >= 0");
    const DecayCertificate c = poisson_certificate(st);
    return c.scale * std::exp(-c.rate * y * y);
}

double poisson_kernel_series(const PoissonState& st, double y) {
    if (y < 0.0) throw std::domain_error("poisson_kernel_series: y must be >= 0");
    std::vector<double> coef(static_cast<std::size_t>(st.K) + 1);
    const double c = poisson_constant(st.alpha);
    for (int k = 0; k <= st.K; ++k) coef[static_cast<std::size_t>(k)] = c * std::exp(-st.t * eigenvalue(st.alpha, k));
    return damped_series(st.alpha, y, coef);
}

DecayCertificate poisson_certificate(const PoissonState& st) {
    const double w = std::exp(-4.0 * st.t);
    const double scale = poisson_constant(st.alpha) * std::exp(-st.t * eigenvalue(st.alpha, 0)) *
                         std::pow(-std::expm1(-4.0 * st.t), -st.alpha - 1.0);
    return {scale, 0.5 + w / -std::expm1(-4.0 * st.t), 2.0};
}

Expansion poisson_means(const Expansion& e, double t) {
    require_psi(e, "poisson_means");
    if (!(t > 0.0)) throw std::invalid_argument("poisson_means: t must be positive");
    std::vector<cplx> c = e.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= std::exp(-t * eigenvalue(e.tag().alpha, static_cast<int>(k)));
    return Expansion(e.tag(), std::move(c));
}

cplx d_sigma_u(const Expansion& e, double sigma, double r, double x) {
    require_psi(e, "d_sigma_u");
    const double a = e.tag().alpha;
    const std::vector<double> b = basis_values(e.tag(), e.K(), x);
    cplx s{};
    for (int k = 0; k <= e.K(); ++k) {
        const double lam = eigenvalue(a, k);
        s += std::pow(lam, sigma) * std::pow(r, lam) * e.coeffs()[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(k)];
    }
    return s;
}

double g_sigma(const Expansion& e, double sigma, double x) {
    require_psi(e, "g_sigma");
    if (!(sigma >= 1.0)) throw std::invalid_argument("g_sigma: sigma must be >= 1");
    const double a = e.tag().alpha;
    const std::vector<double> b = basis_values(e.tag(), e.K(), x);
    std::vector<cplx> v(b.size());
    for (std::size_t k = 0; k < b.size(); ++k)
        v[k] = std::pow(eigenvalue(a, static_cast<int>(k)), sigma) * e.coeffs()[k] * b[k];
    double s = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j)
        for (std::size_t k = 0; k < v.size(); ++k) {
            const double den = eigenvalue(a, static_cast<int>(j)) + eigenvalue(a, static_cast<int>(k));
            s += (v[j] * std::conj(v[k])).real() * std::pow(den, -2.0 * sigma);
        }
    return std::sqrt(std::max(0.0, std::tgamma(2.0 * sigma) * s));
}

double theta_integral(const std::function<double(double)>& g, double alpha, double scale, int nodes) {
    const double w = 2.0 * alpha;
    const double eps = std::clamp(scale, 1e-300, half_pi);
    // [0, eps]: sin^{2a} = theta^{2a} (sin theta / theta)^{2a}
    double s = jacobi_left_panel(
        [&](double th) { return g(th) * (th > 0.0 ? std::pow(std::sin(th) / th, w) : 1.0); }, w, eps, nodes);
    for (double a = eps; a < half_pi; a *= 2.0) {
        const double b = std::min(2.0 * a, half_pi);
        s += legendre_panel([&](double th) { return g(th) * std::pow(std::sin(th), w); }, a, b, nodes);
    }
    // [pi/2, pi] with (pi - theta)^{2a} folded in
    s += jacobi_left_panel(
        [&](double u) {
            const double th = std::numbers::pi - u;
            return g(th) * (u > 0.0 ? std::pow(std::sin(u) / u, w) : 1.0);
        },
        w, half_pi, nodes);
    return s;
}

double euclidean_translate(const RealFn& f, double x, double y, double alpha, int nodes) {
    require_alpha_nonneg(alpha, "euclidean_translate");
    if (x < 0.0 || y < 0.0) throw std::domain_error("euclidean_translate: x, y must be >= 0");
    return translation_constant(alpha) *
           theta_integral([&](double th) { return f(theta_distance(x, y, th)); }, alpha, half_pi, nodes);
}

double twisted_translate(const RealFn& f, double x, double y, double alpha, int nodes) {
    require_alpha_nonneg(alpha, "twisted_translate");
    if (x < 0.0 || y < 0.0) throw std::domain_error("twisted_translate: x, y must be >= 0");
    return translation_constant(alpha) *
           theta_integral(
               [&](double th) { return f(theta_distance(x, y, th)) * bessel_normalized(alpha - 0.5, x * y * std::sin(th)); },
               alpha, half_pi, nodes);
}

double twisted_convolve(const RealFn& f, const DecayCertificate& cert_f, const RealFn& g,
                        const DecayCertificate& cert_g, double x, double alpha, double tol) {
    require_alpha_nonneg(alpha, "twisted_convolve");
    const double w = 2.0 * alpha + 1.0;
    const double sup_f = cert_f.scale;
    if (sup_f == 0.0 || cert_g.scale == 0.0) return 0.0;
    const double y_max = tail_cutoff(NormSpec::plain(1.0, w), cert_g, tol / sup_f);
    const QuadRule rule = weighted_composite_rule(w, y_max, 0.5, 32);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double gy = g(rule.nodes[i]);
        if (gy == 0.0) continue;
        s += rule.weights[i] * gy * twisted_translate(f, x, rule.nodes[i], alpha, 32);
    }
    return s;
}

GLambdaKernel GLambdaKernel::make(double alpha, double lambda) {
    require_alpha_nonneg(alpha, "GLambdaKernel");
    if (!(lambda > alpha + 1.0))
        throw std::invalid_argument("GLambdaKernel: (1+y^2)^{-lambda} is in L^1(dmu_alpha) only for lambda > alpha + 1");
    GLambdaKernel k{alpha, lambda};
    // y = tan phi turns the mass into int_0^{pi/2} sin^{2a+1} cos^{2 lambda - 2a - 3}
    const double b = 2.0 * lambda - 2.0 * alpha - 3.0;
    double numeric = jacobi_left_panel(
        [&](double u) { return std::pow(std::sin(half_pi - u) , 2.0 * alpha + 1.0) * (u > 0.0 ? std::pow(std::sin(u) / u, b) : 1.0); },
        b, half_pi, 64);
    if (std::abs(numeric - k.mass()) > 1e-8 * k.mass())
        throw accuracy_error("GLambdaKernel: numerical mass disagrees with the beta-function value");
    return k;
}

double GLambdaKernel::mass() const {
    return std::exp(log_gamma(alpha + 1.0) + log_gamma(lambda - alpha - 1.0) - log_gamma(lambda)) / 2.0;
}

double GLambdaKernel::operator()(double y) const {
    return std::pow(1.0 + y * y, -lambda);
}

double GLambdaKernel::dilated(double t, double y) const {
    return std::pow(t, -(alpha + 1.0)) * std::pow(1.0 + y * y / t, -lambda);
}

GLambdaResult g_lambda_star(const Expansion& e, const GLambdaKernel& kern, double x, const GLambdaGrid& grid) {
    require_psi(e, "g_lambda_star");
    if (e.tag().alpha != kern.alpha) throw std::invalid_argument("g_lambda_star: kernel and expansion alpha differ");
    if (x < 0.0) throw std::domain_error("g_lambda_star: x must be >= 0");
    const double alpha = kern.alpha;
    const double w = 2.0 * alpha + 1.0;
    const double c_tr = translation_constant(alpha);
    const double lam0 = eigenvalue(alpha, 0);
    const double y_max = std::sqrt(eigenvalue(alpha, e.K())) + 7.0;
    const double t_max = 22.0 / lam0;

    // Conv(t) = int tau^E_x K_t(y) |d_1 u(y, e^{-t})|^2 dmu(y)
    auto conv = [&](double t) {
        const double r = std::exp(-t);
        auto du2 = [&](double y) { return std::norm(d_sigma_u(e, 1.0, r, y)); };
        auto tau = [&](double y) {
            const double eps = x * y > 0.0 ? std::sqrt(((x - y) * (x - y) + t) / (x * y)) : half_pi;
            return c_tr * theta_integral([&](double th) { return kern.dilated(t, theta_distance(x, y, th)); }, alpha, eps,
                                         grid.theta_nodes);
        };
        auto integrand = [&](double y) { return tau(y) * du2(y); };
        // breakpoints x +- sqrt(t) 2^j
        std::vector<double> bp{0.0, y_max};
        const double h = std::sqrt(t);
        for (double d = h; d < y_max; d *= 2.0) {
            if (x - d > 0.0) bp.push_back(x - d);
            if (x + d < y_max) bp.push_back(x + d);
        }
        if (x > 0.0 && x < y_max) bp.push_back(x);
        std::sort(bp.begin(), bp.end());
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
        double s = jacobi_left_panel(integrand, w, bp[1], grid.y_nodes);
        for (std::size_t i = 1; i + 1 < bp.size(); ++i)
            s += legendre_panel([&](double y) { return integrand(y) * std::pow(y, w); }, bp[i], bp[i + 1], grid.y_nodes);
        return s;
    };

    auto t_integral = [&](int nodes) {
        const double q = std::pow(t_max / grid.t_min, 1.0 / grid.t_panels);
        double s = 0.0;
        double a = grid.t_min;
        for (int i = 0; i < grid.t_panels; ++i) {
            const double b = a * q;
            s += legendre_panel([&](double t) { return t * conv(t); }, a, b, nodes);
            a = b;
        }
        return s;
    };

    const double fine = t_integral(grid.t_nodes);
    const double coarse = t_integral(std::max(2, grid.t_nodes / 2));
    GLambdaResult res;
    res.value = std::sqrt(std::max(0.0, fine));
    res.error_estimate = std::abs(res.value - std::sqrt(std::max(0.0, coarse)));
    return res;
}

double lemma23_theta_integral(double x, double y, double alpha) {
    require_alpha_nonneg(alpha, "lemma23_theta_integral");
    if (!(x > 0.0 && y > 0.0)) throw std::domain_error("lemma23_theta_integral: x, y must be positive");
    if (x == y) return std::numeric_limits<double>::infinity();
    const double eps = std::abs(x - y) / std::sqrt(x * y);
    const double e = -(2.0 * alpha + 2.0);
    return theta_integral([&](double th) { return std::pow(theta_distance(x, y, th), e); }, alpha, eps, 32);
}

double lemma23_kernel(double x, double y, double alpha, double delta, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lemma23_kernel: p must be >= 1");
    if (x == y) return 0.0;
    const double factor = std::abs(1.0 - std::pow(x / y, 2.0 * delta / p));
    if (factor == 0.0) return 0.0;
    return factor * lemma23_theta_integral(x, y, alpha);
}

double dsM(const MultiplierSeq& m, double s, double r, double y, double alpha, double tol) {
    require_alpha_nonneg(alpha, "dsM");
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("dsM: r must lie in (0,1)");
    if (y < 0.0) throw std::domain_error("dsM: y must be >= 0");
    const double c = poisson_constant(alpha);
    int K;
    if (auto n = m.support_bound())
        K = static_cast<int>(*n);
    else
        K = certified_truncation(alpha, s, r, c * m.sup_norm(), tol);
    std::vector<double> coef(static_cast<std::size_t>(K) + 1);
    double imag = 0.0, mag = 0.0;
    for (int k = 0; k <= K; ++k) {
        const cplx mk = m(k);
        imag = std::max(imag, std::abs(mk.imag()));
        mag = std::max(mag, std::abs(mk));
        const double lam = eigenvalue(alpha, k);
        coef[static_cast<std::size_t>(k)] = c * std::pow(lam, s) * std::pow(r, lam) * mk.real();
    }
    if (imag > 1e-14 * std::max(mag, 1.0)) throw std::invalid_argument("dsM: multiplier must be real-valued");
    return damped_series(alpha, y, coef);
}

std::vector<DsmRatioRow> dsm_ratios(const MultiplierSeq& m, double s, double alpha, const std::vector<double>& r_grid) {
    WbvSpec ws;
    ws.q = 2.0;
    ws.s = s;
    ws.n_max = 1024;
    const double wbv = wbv_norm(m, ws).norm;
    double sup_m = m.sup_norm();
    if (m.kind() == SeqKind::table) {
        sup_m = 0.0;
        for (const cplx& v : m.table_values()) sup_m = std::max(sup_m, std::abs(v));
    }
    // y^s d_sM decays like a Gaussian in y for these kernels; [0, 12] carries all of the mass
    const QuadRule rule = weighted_composite_rule(2.0 * s + 2.0 * alpha + 1.0, 12.0, 0.125, 32);
    std::vector<DsmRatioRow> rows;
    for (double r : r_grid) {
        DsmRatioRow row;
        row.r = r;
        for (int i = 0; i <= 800; ++i) row.sup_dsM = std::max(row.sup_dsM, std::abs(dsM(m, s, r, i * 0.01, alpha)));
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double v = dsM(m, s, r, rule.nodes[i], alpha);
            row.l2_moment += rule.weights[i] * v * v;
        }
        row.ratio_a = row.sup_dsM * std::pow(1.0 - r, s + alpha + 1.0) / (std::pow(r, 2.0 * alpha + 2.0) * sup_m);
        row.ratio_b = row.l2_moment * std::pow(1.0 - r, s + alpha + 1.0) / (std::pow(r, 4.0 * alpha + 4.0) * wbv * wbv);
        rows.push_back(row);
    }
    return rows;
}

} // namespace laglab
