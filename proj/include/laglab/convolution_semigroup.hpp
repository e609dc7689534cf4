#ifndef LAGLAB_CONVOLUTION_SEMIGROUP_HPP
#define LAGLAB_CONVOLUTION_SEMIGROUP_HPP

#include "laglab/expansion_engine.hpp"
#include "laglab/quadrature.hpp"
#include "laglab/sequence_calculus.hpp"

#include <functional>
#include <vector>

namespace laglab {

/// Normalizing constant of the Poisson kernel and d_sM, 2 / Gamma(alpha + 1).
double poisson_constant(double alpha);

/// Smallest K with sup_y |sum_{k>K} lambda_k^s r^{lambda_k} L_k^alpha(y^2) e^{-y^2/2}| * scale <= tol,
/// from |L_k^alpha(x) e^{-x/2}| <= A_k^alpha (alpha >= 0) and the decreasing term ratio.
/// Throws accuracy_error past max_K.
int certified_truncation(double alpha, double s, double r, double scale, double tol, int max_K = 200000);

struct PoissonState {
    double alpha = 0.0;
    double t = 1.0;
    int K = 0;
    double tail_tol = 1e-14;

    /// alpha >= 0, t > 0; K from certified_truncation.
    static PoissonState make(double alpha, double t, double tail_tol = 1e-14);
    double r() const;
};

/// p_t(y) = c_alpha sum_k e^{-t lambda_k} L_k^alpha(y^2) e^{-y^2/2}, summed in closed form
/// through the generating function (the truncated series cancels to ~1e-17 absolute,
/// which swamps p_t far out in y).
double poisson_kernel(const PoissonState& st, double y);

/// The truncated series itself, K = st.K terms, tail <= st.tail_tol.
double poisson_kernel_series(const PoissonState& st, double y);

/// Decay certificate for p_t, read off the generating function
/// sum_k w^k L_k^alpha(x) = (1-w)^{-alpha-1} exp(-x w / (1-w)).
DecayCertificate poisson_certificate(const PoissonState& st);

/// c_k -> e^{-t lambda_k} c_k (psi-system).
Expansion poisson_means(const Expansion& e, double t);

/// d_sigma u(x, r) = sum_k lambda_k^sigma r^{lambda_k} c_k psi_k(x)
cplx d_sigma_u(const Expansion& e, double sigma, double r, double x);

/// Closed form of g_sigma(f)(x) for a finite psi-expansion.
double g_sigma(const Expansion& e, double sigma, double x);

/// int_0^pi g(theta) sin^{2 alpha} theta d theta, with panels graded geometrically
/// toward theta = 0 from width `scale` (pi/2 means no grading).
double theta_integral(const std::function<double(double)>& g, double alpha, double scale = 1.5707963267948966,
                      int nodes = 64);

double euclidean_translate(const RealFn& f, double x, double y, double alpha, int nodes = 64);
double twisted_translate(const RealFn& f, double x, double y, double alpha, int nodes = 64);

/// f x g (x) = int tau_x f(y) g(y) dmu_alpha(y). The y-range is cut where
/// sup|f| * tail(g) <= tol (sup|f| <= cert_f.scale).
double twisted_convolve(const RealFn& f, const DecayCertificate& cert_f, const RealFn& g,
                        const DecayCertificate& cert_g, double x, double alpha, double tol = 1e-10);

struct GLambdaKernel {
    double alpha = 0.0;
    double lambda = 2.0;

    /// Throws std::invalid_argument unless lambda > alpha + 1; also checks the
    /// L^1(dmu_alpha) mass numerically against the beta-function value.
    static GLambdaKernel make(double alpha, double lambda);
    /// int_0^inf (1 + y^2)^{-lambda} dmu_alpha(y)
    double mass() const;
    double operator()(double y) const;
    /// K_t(y) = t^{-(alpha+1)} K(y / sqrt t)
    double dilated(double t, double y) const;
};

struct GLambdaGrid {
    int t_panels = 16;
    int t_nodes = 24;
    double t_min = 1e-6;
    int y_nodes = 16;
    int theta_nodes = 16;
};

struct GLambdaResult {
    double value = 0.0;
    double error_estimate = 0.0;  ///< |value - value with half the t nodes|
};

GLambdaResult g_lambda_star(const Expansion& e, const GLambdaKernel& kern, double x,
                            const GLambdaGrid& grid = {});

/// int_0^pi (x,y)_theta^{-(2 alpha + 2)} sin^{2 alpha} theta d theta
double lemma23_theta_integral(double x, double y, double alpha);

/// |1 - (x/y)^{2 delta / p}| times the theta integral; 0 at x = y.
double lemma23_kernel(double x, double y, double alpha, double delta, double p);

/// d_sM(y, r) = c_alpha sum_k lambda_k^s m_k r^{lambda_k} L_k^alpha(y^2) e^{-y^2/2}
double dsM(const MultiplierSeq& m, double s, double r, double y, double alpha, double tol = 1e-12);

struct DsmRatioRow {
    double r = 0.0;
    double sup_dsM = 0.0;
    double ratio_a = 0.0;  ///< sup_y |d_sM| (1-r)^{s+alpha+1} / (r^{2alpha+2} ||m||_inf)
    double l2_moment = 0.0;
    double ratio_b = 0.0;  ///< int |y^s d_sM|^2 dmu (1-r)^{s+alpha+1} / (r^{4alpha+4} ||m||_{2,s}^2)
};

/// Both ratios over r_grid; m must be real-valued; sup over y in [0, 8] sampled on 801 points.
std::vector<DsmRatioRow> dsm_ratios(const MultiplierSeq& m, double s, double alpha, const std::vector<double>& r_grid);

} // namespace laglab

#endif
