#include "laglab/sequence_calculus.hpp"

#include "laglab/errors.hpp"
#include "laglab/quadrature.hpp"
#include "laglab/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace laglab {

namespace {

constexpr long frac_diff_budget = 1L << 22;

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

// A_j^{-s-1} for j = 0, 1, ... grown on demand.
class DiffCoefficients {
public:
    explicit DiffCoefficients(double s) : delta_(-s - 1.0), a_{1.0} {}
    double operator[](long j) {
        while (static_cast<long>(a_.size()) <= j) {
            const auto n = static_cast<double>(a_.size());
            a_.push_back(a_.back() * (n + delta_) / n);
        }
        return a_[static_cast<std::size_t>(j)];
    }

private:
    double delta_;
    std::vector<double> a_;
};

// m_i - c for i = 0, 1, ... grown on demand.
class ShiftedValues {
public:
    ShiftedValues(const MultiplierSeq& m, cplx c) : m_(m), c_(c) {}
    cplx operator[](long i) {
        while (static_cast<long>(v_.size()) <= i) v_.push_back(m_(static_cast<long>(v_.size())) - c_);
        return v_[static_cast<std::size_t>(i)];
    }

private:
    const MultiplierSeq& m_;
    cplx c_;
    std::vector<cplx> v_;
};

cplx certified_sum(const MultiplierSeq& m, double s, long k, double tol, DiffCoefficients& A, ShiftedValues& v) {
    // |A_j| j^{s+1} is non-increasing for j > s + 1, so for J past that point
    // sum_{j > J} |A_j| E(k + j) <= E(k + J + 1) |A_J| J^{s+1} J^{-s} / s.
    const long j0 = static_cast<long>(std::floor(s + 1.0)) + 1;
    KahanSum acc;
    long next_check = std::max<long>(j0, 16);
    for (long j = 0;; ++j) {
        acc.add(A[j] * v[k + j]);
        if (j == next_check) {
            const double J = static_cast<double>(j);
            const double coeff = std::abs(A[j]) * std::pow(J, s + 1.0);
            const double bound = m.tail_envelope(k + j + 1) * coeff * std::pow(J, -s) / s;
            if (bound <= tol) return acc.sum;
            next_check = j + std::max<long>(16, j / 4);
            if (j > frac_diff_budget)
                throw convergence_error("frac_diff: tail bound cannot certify tol within the term budget");
        }
    }
}

void require_order(double s) {
    if (!(s > 0.0)) throw std::invalid_argument("frac_diff: order s must be positive");
}

} // namespace

MultiplierSeq MultiplierSeq::table(std::vector<cplx> values, std::string formula, Params params) {
    MultiplierSeq m;
    m.kind_ = SeqKind::table;
    m.formula_ = std::move(formula);
    m.params_ = std::move(params);
    m.table_ = std::move(values);
    for (const cplx& v : m.table_) m.sup_ = std::max(m.sup_, std::abs(v));
    m.limit_ = cplx{0.0};
    return m;
}

MultiplierSeq MultiplierSeq::table(const std::vector<double>& values) {
    return table(std::vector<cplx>(values.begin(), values.end()));
}

MultiplierSeq MultiplierSeq::closed_form(std::string formula, Params params, std::function<cplx(double)> fn,
                                         double sup_norm, std::optional<cplx> limit, Envelope envelope) {
    if (!(sup_norm >= 0.0) || !std::isfinite(sup_norm))
        throw std::invalid_argument("MultiplierSeq: sup norm must be finite");
    MultiplierSeq m;
    m.kind_ = SeqKind::closed_form;
    m.formula_ = std::move(formula);
    m.params_ = std::move(params);
    m.fn_ = std::move(fn);
    m.sup_ = sup_norm;
    m.limit_ = limit;
    m.envelope_ = std::move(envelope);
    return m;
}

MultiplierSeq MultiplierSeq::sampled(std::string formula, Params params, std::function<cplx(double)> fn,
                                     double sup_norm, std::optional<cplx> limit, Envelope envelope) {
    MultiplierSeq m = closed_form(std::move(formula), std::move(params), std::move(fn), sup_norm, limit,
                                  std::move(envelope));
    m.kind_ = SeqKind::sampled_function;
    return m;
}

MultiplierSeq MultiplierSeq::constant(cplx c) {
    return closed_form("constant", {{"re", c.real()}, {"im", c.imag()}}, [c](double) { return c; }, std::abs(c), c,
                       [](double) { return 0.0; });
}

MultiplierSeq MultiplierSeq::unit(int j) {
    if (j < 0) throw std::invalid_argument("MultiplierSeq::unit: index must be non-negative");
    std::vector<cplx> v(static_cast<std::size_t>(j) + 1, cplx{0.0});
    v.back() = 1.0;
    return table(std::move(v), "unit", {{"j", j}});
}

MultiplierSeq MultiplierSeq::geometric(double r) {
    if (!(std::abs(r) < 1.0)) throw std::invalid_argument("MultiplierSeq::geometric: |r| must be < 1");
    return closed_form("geometric", {{"r", r}}, [r](double k) { return cplx{std::pow(r, k)}; }, 1.0, cplx{0.0},
                       [r](double i) { return std::pow(std::abs(r), i); });
}

cplx MultiplierSeq::operator()(long k) const {
    if (k < 0) throw std::out_of_range("MultiplierSeq: negative index");
    if (kind_ == SeqKind::table)
        return static_cast<std::size_t>(k) < table_.size() ? table_[static_cast<std::size_t>(k)] : cplx{0.0};
    return fn_(static_cast<double>(k));
}

cplx MultiplierSeq::continuous(double x) const {
    if (kind_ != SeqKind::sampled_function)
        throw std::logic_error("MultiplierSeq::continuous: only sampled-function sequences have one");
    return fn_(x);
}

std::optional<long> MultiplierSeq::support_bound() const {
    if (kind_ != SeqKind::table) return std::nullopt;
    return static_cast<long>(table_.size()) - 1;
}

double MultiplierSeq::tail_envelope(long i) const {
    if (kind_ == SeqKind::table)
        return static_cast<std::size_t>(i) < table_.size() ? sup_ : 0.0;
    if (envelope_) return envelope_(static_cast<double>(i));
    return sup_ + std::abs(limit_.value_or(cplx{0.0}));
}

cplx frac_diff(const MultiplierSeq& m, double s, long k, double tol) {
    require_order(s);
    if (k < 0) throw std::out_of_range("frac_diff: negative index");
    if (auto n = m.support_bound()) {
        if (k > *n) return 0.0;
        DiffCoefficients A(s);
        KahanSum acc;
        for (long j = 0; j <= *n - k; ++j) acc.add(A[j] * m(k + j));
        return acc.sum;
    }
    DiffCoefficients A(s);
    ShiftedValues v(m, m.limit().value_or(cplx{0.0}));
    return certified_sum(m, s, k, tol, A, v);
}

std::vector<cplx> frac_diff_range(const MultiplierSeq& m, double s, long k_max, double tol) {
    require_order(s);
    std::vector<cplx> out(static_cast<std::size_t>(std::max<long>(k_max + 1, 0)));
    DiffCoefficients A(s);
    if (auto n = m.support_bound()) {
        for (long k = 0; k <= std::min(k_max, *n); ++k) {
            KahanSum acc;
            for (long j = 0; j <= *n - k; ++j) acc.add(A[j] * m(k + j));
            out[static_cast<std::size_t>(k)] = acc.sum;
        }
        return out;
    }
    ShiftedValues v(m, m.limit().value_or(cplx{0.0}));
    for (long k = 0; k <= k_max; ++k) out[static_cast<std::size_t>(k)] = certified_sum(m, s, k, tol, A, v);
    return out;
}

WbvReport wbv_norm(const MultiplierSeq& m, const WbvSpec& spec) {
    if (!(spec.q >= 1.0)) throw std::invalid_argument("wbv_norm: q must be >= 1");
    require_order(spec.s);
    if (spec.n_max < 1) throw std::invalid_argument("wbv_norm: n_max must be >= 1");

    const long k_max = 2 * spec.n_max;
    const std::vector<cplx> diff = frac_diff_range(m, spec.s, k_max, spec.tail_tol);
    const bool sup_block = std::isinf(spec.q);

    // term_k = k^{-1} |k^s Delta^s m_k|^q (or |k^s Delta^s m_k| for q = inf)
    std::vector<double> term(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (long k = 1; k <= k_max; ++k) {
        const double v = std::pow(static_cast<double>(k), spec.s) * std::abs(diff[static_cast<std::size_t>(k)]);
        term[static_cast<std::size_t>(k)] = sup_block ? v : std::pow(v, spec.q) / static_cast<double>(k);
    }

    WbvReport rep;
    rep.sup_norm = m.sup_norm();
    if (m.kind() == SeqKind::table) {
        rep.sup_norm = 0.0;
        for (const cplx& v : m.table_values()) rep.sup_norm = std::max(rep.sup_norm, std::abs(v));
    }

    std::vector<double> prefix(term.size() + 1, 0.0);
    for (std::size_t k = 0; k < term.size(); ++k) prefix[k + 1] = prefix[k] + term[k];

    long next_profile = 1;
    for (long n = 1; n <= spec.n_max; ++n) {
        double block;
        if (sup_block) {
            block = 0.0;
            for (long k = n; k <= 2 * n; ++k) block = std::max(block, term[static_cast<std::size_t>(k)]);
        } else {
            const double sum = prefix[static_cast<std::size_t>(2 * n + 1)] - prefix[static_cast<std::size_t>(n)];
            block = std::pow(std::max(sum, 0.0), 1.0 / spec.q);
        }
        if (block > rep.block_sup) {
            rep.block_sup = block;
            rep.argmax_n = n;
        }
        if (n == next_profile) {
            rep.profile.emplace_back(n, block);
            next_profile *= 2;
        }
    }
    rep.norm = rep.sup_norm + rep.block_sup;
    rep.sup_at_boundary = rep.argmax_n > spec.n_max / 2 && rep.block_sup > 0.0;
    return rep;
}

MultiplierSeq cesaro_seq(int n, double nu) {
    if (n < 0) throw std::invalid_argument("cesaro_seq: n must be non-negative");
    if (!(nu > -1.0)) throw std::invalid_argument("cesaro_seq: nu must exceed -1");
    std::vector<double> A(static_cast<std::size_t>(n) + 1, 1.0);
    for (int j = 1; j <= n; ++j) A[static_cast<std::size_t>(j)] = A[static_cast<std::size_t>(j - 1)] * (j + nu) / j;
    std::vector<cplx> v(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) v[static_cast<std::size_t>(k)] = A[static_cast<std::size_t>(n - k)] / A.back();
    return MultiplierSeq::table(std::move(v), "cesaro", {{"n", n}, {"nu", nu}});
}

double cesaro_frac_diff_closed(int n, double nu, double s, long k) {
    if (k < 0 || k > n) return 0.0;
    return binom_A(static_cast<int>(n - k), nu - s) / binom_A(n, nu);
}

MultiplierSeq oscillating_seq(double zeta, double eta) {
    if (!(zeta > 0.0 && eta > 0.0)) throw std::invalid_argument("oscillating_seq: zeta and eta must be positive");
    const double decay = zeta * eta;
    return MultiplierSeq::closed_form(
        "oscillating", {{"zeta", zeta}, {"eta", eta}},
        [decay, eta](double k) {
            if (k == 0.0) return cplx{0.0};
            return std::pow(k, -decay) * std::exp(cplx{0.0, std::pow(k, eta)});
        },
        1.0, cplx{0.0}, [decay](double i) { return std::pow(std::max(i, 1.0), -decay); });
}

MultiplierSeq imag_power_seq(double tau) {
    return MultiplierSeq::sampled(
        "imag-power", {{"tau", tau}},
        [tau](double x) { return x == 0.0 ? cplx{1.0} : std::exp(cplx{0.0, tau * std::log(x)}); }, 1.0,
        std::nullopt);
}

MultiplierSeq rational_seq() {
    return MultiplierSeq::sampled(
        "rational", {}, [](double x) { return cplx{x / (1.0 + x)}; }, 1.0, cplx{1.0},
        [](double i) { return 1.0 / (1.0 + i); });
}

MultiplierSeq inverse_power_seq(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("inverse_power_seq: a must be positive");
    return MultiplierSeq::sampled(
        "inverse-power", {{"a", a}}, [a](double x) { return cplx{std::pow(1.0 + x, -a)}; }, 1.0, cplx{0.0},
        [a](double i) { return std::pow(1.0 + i, -a); });
}

double hormander_quantity(const std::function<cplx(double)>& m, const std::function<cplx(double)>& m_prime,
                          const std::vector<double>& n_grid, int nodes) {
    if (n_grid.empty()) throw std::invalid_argument("hormander_quantity: empty N grid");
    double sup_m = 0.0;
    double sup_int = 0.0;
    const double n_min = *std::min_element(n_grid.begin(), n_grid.end());
    if (!(n_min > 0.0)) throw std::invalid_argument("hormander_quantity: N values must be positive");
    for (double x : gauss_legendre_rule(nodes, 0.0, n_min).nodes) sup_m = std::max(sup_m, std::norm(m(x)));
    for (double N : n_grid) {
        const QuadRule r = gauss_legendre_rule(nodes, N, 2.0 * N);
        double integral = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            integral += r.weights[i] * std::norm(m_prime(r.nodes[i])) * r.nodes[i];
            sup_m = std::max(sup_m, std::norm(m(r.nodes[i])));
        }
        sup_m = std::max({sup_m, std::norm(m(N)), std::norm(m(2.0 * N))});
        sup_int = std::max(sup_int, integral);
    }
    return sup_m + sup_int;
}

std::vector<double> dyadic_grid(int j_lo, int j_hi) {
    std::vector<double> g;
    for (int j = j_lo; j <= j_hi; ++j) g.push_back(std::ldexp(1.0, j));
    return g;
}

double critical_index(double alpha, double p) {
    if (!(alpha > -1.0)) throw std::domain_error("critical_index: alpha must exceed -1");
    if (!(p >= 1.0)) throw std::domain_error("critical_index: p must be >= 1");
    return (2.0 * alpha + 2.0) * std::abs(1.0 / p - 0.5);
}

} // namespace laglab
