#ifndef LAGLAB_EXPANSION_ENGINE_HPP
#define LAGLAB_EXPANSION_ENGINE_HPP

#include "laglab/quadrature.hpp"
#include "laglab/sequence_calculus.hpp"
#include "laglab/special_functions.hpp"

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace laglab {

/// Finite expansion sum_{k<=K} c_k b_k in one of the four systems. Immutable.
class Expansion {
public:
    Expansion(SystemTag tag, std::vector<cplx> coeffs);

    const SystemTag& tag() const { return tag_; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    int K() const { return static_cast<int>(coeffs_.size()) - 1; }
    /// Euclidean norm of the coefficients (= L^2 norm under the tag's measure).
    double l2() const;

private:
    SystemTag tag_;
    std::vector<cplx> coeffs_;
};

Expansion unit_expansion(const SystemTag& tag, int k, int K);

/// Coefficients 0..K of f, each to absolute error tol.
/// l-system: Gauss-Laguerre (exact when f e^{x/2} is a polynomial of degree <= N-K-1),
/// checked against a second node count. Other systems need a decay certificate for f;
/// the truncation point comes from Cauchy-Schwarz against the orthonormal b_k.
Expansion analyze(const ComplexFn& f, const SystemTag& tag, int K, double tol,
                  const std::optional<DecayCertificate>& cert = std::nullopt);

/// sum_k c_k b_k(x), compensated.
cplx synthesize(const Expansion& e, double x);

/// |synthesize(e, x)| <= scale exp(-rate x^power); needs alpha >= 0 for script_l, alpha >= -1/2 for phi.
DecayCertificate decay_certificate(const Expansion& e);

Expansion apply_multiplier(const MultiplierSeq& m, const Expansion& e);

/// Same coefficients, retagged (script_l, alpha).
Expansion transplant(const Expansion& e, double alpha);

struct MultiplierSpaceParams {
    double alpha = 0.0;
    double p = 2.0;
    double gamma = 0.0;
    /// -1 < gamma < p (alpha + 1) - 1, alpha > -1, 1 < p < inf; throws std::invalid_argument.
    void validate() const;
};

enum class SpaceRequest { dual, script_shift, phi_shift, thm11_range, thm41_range, lep_range };
SpaceRequest parse_space_request(std::string_view name);

/// M^p_{a,g} = M^{p'}_{a, a p' - g p'/p}
MultiplierSpaceParams dual_params(const MultiplierSpaceParams& s);
/// the script-L space with gamma equals M^p_{a, g + a p/2}
MultiplierSpaceParams script_shift(const MultiplierSpaceParams& s);
/// the phi space with gamma equals M^p_{a, g + a p/2 + p/4 - 1/2}
MultiplierSpaceParams phi_shift(const MultiplierSpaceParams& s);
/// (a+1) max{-p/2,-1} < g - a < (a+1) min{p/2, p-1}, a >= 0
bool thm11_range(const MultiplierSpaceParams& s);
/// a >= 0 and (2a+2)/(a+2) < p < (2a+2)/a
bool lep_range(const MultiplierSpaceParams& s);
/// Admissible delta for transplantation between script-L systems alpha and beta.
bool transplant_range(double alpha, double beta, double p, double delta);

/// thm41_range reads gamma as the weight exponent delta (no multiplier-space check) and returns transplant_range(alpha, beta, p, delta).
std::variant<MultiplierSpaceParams, bool> space_arithmetic(const MultiplierSpaceParams& s, SpaceRequest r,
                                                           double beta = 0.0);

/// lhs = L_k^{mu+nu}(x); rhs = Gamma(k+mu+nu+1)/(Gamma(nu)Gamma(k+mu+1)) int_0^1 y^mu (1-y)^{nu-1} L_k^mu(yx) dy.
/// nu >= 1: Gauss-Jacobi in y. nu < 1: y = 1 - u^{1/nu}, which removes the (1-y)^{nu-1} factor.
std::pair<double, double> projection_formula_check(int k, double mu, double nu, double x);

} // namespace laglab

#endif
