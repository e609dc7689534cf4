#ifndef LAGLAB_SPECIAL_FUNCTIONS_HPP
#define LAGLAB_SPECIAL_FUNCTIONS_HPP

#include <string_view>
#include <vector>

namespace laglab {

/// The four orthonormal Laguerre function systems.
///   l        : orthonormal in L^2(x^alpha dx)
///   script_l : orthonormal in L^2(dx)
///   phi      : quadratic-argument rescaling of script_l, orthonormal in L^2(dx)
///   psi      : orthonormal in L^2(x^{2 alpha + 1} dx)
enum class Family { l, script_l, phi, psi };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

struct SystemTag {
    Family family = Family::l;
    double alpha = 0.0;

    /// Throws std::domain_error unless alpha > -1.
    static SystemTag make(Family family, double alpha);

    friend bool operator==(const SystemTag&, const SystemTag&) = default;
};

/// Exponent of the power weight x^w dx under which the tag's system is orthonormal.
double measure_exponent(const SystemTag& tag);

/// lambda_k = 4k + 2 alpha + 2, the eigenvalues of the psi-system operator.
constexpr double eigenvalue(double alpha, int k) {
    return 4.0 * k + 2.0 * alpha + 2.0;
}

double log_gamma(double x);

/// Generalized binomial coefficient A_j^delta via A_j = A_{j-1} (j + delta) / j.
double binom_A(int j, double delta);

/// L_k^alpha(x) by forward three-term recurrence.
double laguerre_poly(int k, double alpha, double x);

/// L_k^alpha(x) e^{-x/2} for k = 0..K. Overflow-safe: the recurrence is rescaled
/// internally and the damping is folded in at the end.
std::vector<double> damped_laguerre_values(double alpha, double x, int K);

/// Basis values b_0(x)..b_K(x) of the tagged system at one point.
std::vector<double> basis_values(const SystemTag& tag, int K, double x);

/// Single basis function value. Throws std::domain_error outside the system's domain.
double laguerre_fn(const SystemTag& tag, int k, double x);

/// Normalized Bessel function Gamma(beta+1) J_beta(z) / (z/2)^beta.
inline constexpr double bessel_z_max = 60.0;
double bessel_normalized(double beta, double z);

/// (x, y)_theta = (x^2 + y^2 - 2xy cos theta)^{1/2}
double theta_distance(double x, double y, double theta);

} // namespace laglab

#endif
