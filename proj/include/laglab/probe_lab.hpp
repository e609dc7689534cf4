#ifndef LAGLAB_PROBE_LAB_HPP
#define LAGLAB_PROBE_LAB_HPP

#include "laglab/expansion_engine.hpp"
#include "laglab/sequence_calculus.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace laglab {

enum class SearchKind { random, coordinate_ascent, power_iteration };
std::string_view search_name(SearchKind s);
SearchKind parse_search(std::string_view name);

struct ProbeConfig {
    MultiplierSpaceParams params;
    int K = 16;
    int trials = 64;
    std::uint64_t seed = 1;
    SearchKind search = SearchKind::coordinate_ascent;
    int threads = 0;  ///< 0: hardware concurrency. Results do not depend on it.

    /// K >= 4, trials >= 0, params valid.
    void validate() const;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z);
/// Counter-based stream: the draw for (seed, stream, trial, index) in (0, 1).
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial, std::uint64_t index);
/// Standard Cauchy draw tan(pi (u - 1/2)) from counter_uniform.
double counter_cauchy(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial, std::uint64_t index);

/// Lower bound for sup_c ||sum c_k a_k||_p / ||sum c_k b_k||_p over c in R^{K+1},
/// with a_k = scale_k * basis_a[k], both bases sampled on one weighted grid.
struct RatioProblem {
    std::vector<double> weights;               ///< quadrature weights incl. the power weight
    std::vector<std::vector<double>> basis_b;  ///< K+1 columns
    std::vector<std::vector<double>> basis_a;  ///< empty: reuse basis_b
    std::vector<cplx> scale;                   ///< per-column factor on a; empty: all 1
    double p = 2.0;

    int K() const { return static_cast<int>(basis_b.size()) - 1; }
    double ratio(const std::vector<double>& c) const;
};

struct SearchResult {
    double estimate = 0.0;
    std::string source;  ///< which candidate attained it
    long evaluations = 0;
};

/// Seeded random trials (stream id = K), structured candidates, optional
/// coordinate ascent (2 sweeps of axis perturbations) on each.
SearchResult ratio_search(const RatioProblem& prob, const ProbeConfig& cfg,
                          const std::vector<std::pair<std::string, std::vector<double>>>& structured);

/// Grid for functions of degree <= K in the l / script-L systems: composite rule
/// with x^w folded in, up to 4K + 2 alpha + 60.
QuadRule probe_grid(double weight_exponent, double alpha, int K);

struct NormEstimate {
    double estimate = 0.0;
    std::string source;
    std::vector<std::pair<int, double>> ladder;  ///< (K, estimate) at each dyadic level
    std::vector<std::string> warnings;
};

/// Lower bound for the multiplier norm of m on L^p(x^gamma dx), l-system, span of l_0..l_K.
/// Runs K = 4, 8, 16, ... < cfg.K and cfg.K itself and keeps the running max, so estimates
/// never decrease along dyadic K. p = 2 with gamma = alpha returns max_{k<=K} |m_k| (Parseval).
NormEstimate probe_multiplier(const MultiplierSeq& m, const ProbeConfig& cfg);
double operator_norm_lower_bound(const MultiplierSeq& m, const ProbeConfig& cfg);

struct ExperimentReport {
    std::string experiment;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;  ///< optional leading text column (empty if unused)
    std::string label_column;
    std::map<std::string, std::string> metadata;
    std::map<std::string, double> diagnostics;
    std::vector<std::string> warnings;
    std::string timestamp;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  ///< root-mean-square residual in log space
};
/// Least squares of log y against log x.
SlopeFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Rows (n, K = 4n, estimate) for m_{n,nu} in M^p_{alpha,alpha}. Diagnostics: slope (against
/// log(n+1)), residual, predicted = s_c(p) - nu - 1/2, plateau = slope < plateau_slope.
ExperimentReport cesaro_growth_experiment(double alpha, double p, double nu, const std::vector<int>& n_list,
                                          const ProbeConfig& cfg, double plateau_slope = 0.1);

/// Rows (K, max ratio ||sum b L^alpha|| / ||sum b L^beta|| in L^p(x^delta dx)). Diagnostics:
/// slope of log ratio against log K, growth = last / first, in_range.
ExperimentReport transplantation_experiment(double alpha, double beta, double p, double delta,
                                            const std::vector<int>& K_list, const ProbeConfig& cfg);

using Battery = std::vector<std::pair<std::string, MultiplierSeq>>;
/// Cesaro m_{n, alpha+2} for n = 4..32, an oscillating sequence with zeta > s_c(p), and the sampled functions.
Battery default_battery(double alpha, double p);

/// Rows (estimate, wbv, ratio) per battery entry; diagnostics max_ratio, in_range.
ExperimentReport embedding_experiment(const Battery& battery, double alpha, double p, double gamma, double s,
                                      const ProbeConfig& cfg);

/// d_sM sup and weighted-L2 ratios for m = 1 and m_{16,2}, s = alpha + 1.5.
ExperimentReport dsm_ratio_experiment(double alpha, const std::vector<double>& r_grid);

/// theta-integral profile near y = 1 (times |1-y|) and for large y (times y^{2a+2}).
ExperimentReport kernel_profile_experiment(double alpha, int j_max = 20);

/// g_1 and g_sigma on an x grid for a psi-expansion.
ExperimentReport squarefn_experiment(const Expansion& e, const std::vector<double>& sigmas, const std::vector<double>& xs);

std::string utc_timestamp();

} // namespace laglab

#endif
