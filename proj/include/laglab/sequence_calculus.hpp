#ifndef LAGLAB_SEQUENCE_CALCULUS_HPP
#define LAGLAB_SEQUENCE_CALCULUS_HPP

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace laglab {

using cplx = std::complex<double>;

enum class SeqKind { table, closed_form, sampled_function };

/// A bounded multiplier sequence m_0, m_1, ...
///
/// Table sequences are finitely supported (m_k = 0 past the table). Closed-form
/// and sampled sequences carry a sup norm, an optional limit at infinity, and a
/// tail envelope E(i) >= sup_{i' >= i} |m_{i'} - limit| used to certify
/// truncated fractional-difference sums. Sampled sequences additionally expose
/// the underlying function on [0, inf).
class MultiplierSeq {
public:
    using Params = std::map<std::string, double>;
    using Envelope = std::function<double(double)>;

    static MultiplierSeq table(std::vector<cplx> values, std::string formula = "table", Params params = {});
    static MultiplierSeq table(const std::vector<double>& values);
    static MultiplierSeq closed_form(std::string formula, Params params, std::function<cplx(double)> fn,
                                     double sup_norm, std::optional<cplx> limit, Envelope envelope = {});
    static MultiplierSeq sampled(std::string formula, Params params, std::function<cplx(double)> fn,
                                 double sup_norm, std::optional<cplx> limit, Envelope envelope = {});

    static MultiplierSeq constant(cplx c);
    static MultiplierSeq unit(int j = 0);
    static MultiplierSeq geometric(double r);

    SeqKind kind() const { return kind_; }
    const std::string& formula() const { return formula_; }
    const Params& params() const { return params_; }
    const std::vector<cplx>& table_values() const { return table_; }

    cplx operator()(long k) const;
    /// Underlying function at real x (sampled kind only).
    cplx continuous(double x) const;

    std::optional<long> support_bound() const;
    std::optional<cplx> limit() const { return limit_; }
    double sup_norm() const { return sup_; }
    /// Bound on sup_{i' >= i} |m_{i'} - limit.value_or(0)|.
    double tail_envelope(long i) const;

private:
    SeqKind kind_ = SeqKind::table;
    std::string formula_;
    Params params_;
    std::vector<cplx> table_;
    std::function<cplx(double)> fn_;
    double sup_ = 0.0;
    std::optional<cplx> limit_;
    Envelope envelope_;
};

/// Delta^s m_k = sum_j A_j^{-s-1} m_{k+j} with absolute error <= tol (exact for tables).
cplx frac_diff(const MultiplierSeq& m, double s, long k, double tol = 1e-12);

/// Delta^s m_k for k = 0..k_max, sharing the coefficient and value caches.
std::vector<cplx> frac_diff_range(const MultiplierSeq& m, double s, long k_max, double tol = 1e-12);

struct WbvSpec {
    double q = 2.0;  ///< q = inf: sup over the block
    double s = 1.0;
    long n_max = 4096;
    double tail_tol = 1e-12;
};

struct WbvReport {
    double norm = 0.0;
    double sup_norm = 0.0;
    double block_sup = 0.0;  ///< sup_n (block sum)^{1/q}
    long argmax_n = 0;
    /// (n, block value) at n = 1, 2, 4, ..., n_max.
    std::vector<std::pair<long, double>> profile;
    /// The sup was attained in the last octave (n > n_max / 2): n_max may be too small.
    bool sup_at_boundary = false;
};

/// ||m||_inf + sup_{1 <= n <= n_max} ( sum_{k=n}^{2n} k^{-1} |k^s Delta^s m_k|^q )^{1/q}
WbvReport wbv_norm(const MultiplierSeq& m, const WbvSpec& spec);

/// m_{n,nu}(k) = A_{n-k}^nu / A_n^nu for k <= n, 0 beyond.
MultiplierSeq cesaro_seq(int n, double nu);

/// A_{n-k}^{nu-s} / A_n^nu for 0 <= k <= n, 0 beyond.
double cesaro_frac_diff_closed(int n, double nu, double s, long k);

/// m(k) = k^{-zeta eta} exp(i k^eta) for k >= 1, m(0) = 0.
MultiplierSeq oscillating_seq(double zeta, double eta);

/// Sampled-function sequences used by the CLI and the embedding battery.
MultiplierSeq imag_power_seq(double tau);     ///< m(x) = x^{i tau}, m(0) = 1
MultiplierSeq rational_seq();                 ///< m(x) = x / (1 + x)
MultiplierSeq inverse_power_seq(double a);    ///< m(x) = (1 + x)^{-a}

/// sup_x |m(x)|^2 + sup_N int_N^{2N} |m'(x)|^2 x dx over the given N values.
double hormander_quantity(const std::function<cplx(double)>& m, const std::function<cplx(double)>& m_prime,
                          const std::vector<double>& n_grid, int nodes = 32);

/// Dyadic grid 2^j_lo, ..., 2^j_hi.
std::vector<double> dyadic_grid(int j_lo, int j_hi);

/// s_c(p) = (2 alpha + 2) |1/p - 1/2|
double critical_index(double alpha, double p);

} // namespace laglab

#endif
