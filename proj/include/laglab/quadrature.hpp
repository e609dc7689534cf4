#ifndef LAGLAB_QUADRATURE_HPP
#define LAGLAB_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace laglab {

/// Nodes and weights for one integration rule. `weight_convention` names the
/// measure absorbed into the weights; `exactness` is the polynomial degree
/// integrated exactly against that measure, or -1 for composite rules.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int exactness = -1;
    std::string weight_convention;

    std::size_t size() const { return nodes.size(); }
    double total_mass() const;

    template <class F>
    auto integrate(F&& f) const {
        using R = decltype(f(0.0));
        R sum{};
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

/// Gauss rule for x^alpha e^{-x} dx on (0, inf), N <= 512.
/// Golub-Welsch on the Jacobi matrix, one Newton step per node, Christoffel weights.
QuadRule gauss_laguerre_rule(int N, double alpha);

/// Gauss-Legendre on [a, b].
QuadRule gauss_legendre_rule(int N, double a, double b);

/// Gauss-Jacobi for (1 - t)^a (1 + t)^b dt on [-1, 1].
QuadRule gauss_jacobi_rule(int N, double a, double b);

/// Rule for integrals of the form int_0^X g(x) x^w dx: Gauss-Jacobi on [0, 2^-12],
/// dyadic Gauss-Legendre panels above it, each split into pieces no wider than
/// max_panel_width. The weight x^w is folded into the returned weights.
QuadRule weighted_composite_rule(double w, double x_max, double max_panel_width = 1.0,
                                 int nodes_per_panel = 32);

/// node,weight rows with a header line.
void write_csv(const QuadRule& rule, std::ostream& out);

/// |f(x)| <= scale * exp(-rate * x^power) for all x > 0.
struct DecayCertificate {
    double scale = 1.0;
    double rate = 0.5;
    double power = 1.0;
};

enum class MeasureKind { plain, mu_alpha };

/// Identifies ||f||_{L^p_{v(gamma)}} (plain: x^gamma dx) or ||f||_{p,delta}
/// (mu_alpha: x^{2 delta} x^{2 alpha + 1} dx).
struct NormSpec {
    double p = 2.0;
    double exponent = 0.0;
    MeasureKind measure = MeasureKind::plain;
    double alpha = 0.0;

    static NormSpec plain(double p, double gamma);
    static NormSpec mu(double p, double delta, double alpha);

    /// Total power w of the weight x^w dx.
    double weight_exponent() const;
    /// Throws std::invalid_argument if p < 1 or the weight is not locally integrable.
    void validate() const;
};

/// Upper bound for int_X^inf |f|^p x^w dx from the certificate (upper incomplete gamma).
double tail_bound(const NormSpec& spec, const DecayCertificate& cert, double X);

/// Smallest X (to bisection precision) with tail_bound(X) <= abs_tol.
double tail_cutoff(const NormSpec& spec, const DecayCertificate& cert, double abs_tol);

using ComplexFn = std::function<std::complex<double>(double)>;
using RealFn = std::function<double(double)>;

/// The weighted norm with relative error <= tol. Throws accuracy_error when
/// the panel refinement or the tail certificate cannot meet tol.
double weighted_norm(const ComplexFn& f, const NormSpec& spec, double tol,
                     const DecayCertificate& cert);

struct HardySides {
    double lhs = 0.0;      ///< ( int_0^inf (int_x^inf f)^p x^delta dx )^{1/p}
    double moment = 0.0;   ///< ( int_0^inf (y f(y))^p y^delta dy )^{1/p}
    double constant = 0.0; ///< p / (delta + 1)
    double rhs() const { return constant * moment; }
};

/// Both sides of the weighted Hardy inequality for f >= 0 with a decay
/// certificate of power >= 1.
HardySides hardy_check(const RealFn& f, double p, double delta, const DecayCertificate& cert,
                       double tol = 1e-10);

} // namespace laglab

#endif
