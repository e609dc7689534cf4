#include "laglab/probe_lab.hpp"

#include "laglab/convolution_semigroup.hpp"
#include "laglab/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace laglab {

namespace {

std::string fmt(double v) {
    std::ostringstream o;
    o.precision(17);
    o << v;
    return o.str();
}

// Runs fn(i) for i in [0, n); results must be written by index so order never matters.
template <class Fn>
void parallel_for(int n, int threads, Fn fn) {
    int nt = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    nt = std::min(nt, n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) {
                if (failed) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

double pw(double a, double p) {
    return p == 2.0 ? a * a : std::pow(a, p);
}

// Running sums S_b = sum w |u|^p, S_a = sum w |v|^p for u = B c, v = A c.
struct RatioState {
    std::vector<double> u;
    std::vector<cplx> v;
    double sa = 0.0;
    double sb = 0.0;
    double ratio(double p) const { return sb > 0.0 ? std::pow(sa / sb, 1.0 / p) : 0.0; }
};

const std::vector<double>& a_column(const RatioProblem& pr, int k) {
    return pr.basis_a.empty() ? pr.basis_b[static_cast<std::size_t>(k)] : pr.basis_a[static_cast<std::size_t>(k)];
}

cplx a_scale(const RatioProblem& pr, int k) {
    return pr.scale.empty() ? cplx{1.0} : pr.scale[static_cast<std::size_t>(k)];
}

RatioState make_state(const RatioProblem& pr, const std::vector<double>& c) {
    const std::size_t n = pr.weights.size();
    RatioState st;
    st.u.assign(n, 0.0);
    st.v.assign(n, cplx{0.0});
    for (int k = 0; k <= pr.K(); ++k) {
        const double ck = c[static_cast<std::size_t>(k)];
        if (ck == 0.0) continue;
        const auto& b = pr.basis_b[static_cast<std::size_t>(k)];
        const auto& a = a_column(pr, k);
        const cplx sk = ck * a_scale(pr, k);
        for (std::size_t i = 0; i < n; ++i) {
            st.u[i] += ck * b[i];
            st.v[i] += sk * a[i];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        st.sb += pr.weights[i] * pw(std::abs(st.u[i]), pr.p);
        st.sa += pr.weights[i] * pw(std::abs(st.v[i]), pr.p);
    }
    return st;
}

// Axis perturbations c_k += +-h, h = (|c_k| + rms c)/2, first improvement kept; two sweeps.
double coordinate_ascent(const RatioProblem& pr, std::vector<double> c, long& evals) {
    RatioState st = make_state(pr, c);
    double best = st.ratio(pr.p);
    const std::size_t n = pr.weights.size();
    for (int sweep = 0; sweep < 2; ++sweep)
        for (int k = 0; k <= pr.K(); ++k) {
            double rms = 0.0;
            for (double x : c) rms += x * x;
            rms = std::sqrt(rms / static_cast<double>(c.size()));
            const double h = 0.5 * (std::abs(c[static_cast<std::size_t>(k)]) + rms);
            if (!(h > 0.0) || !std::isfinite(h)) continue;
            const auto& b = pr.basis_b[static_cast<std::size_t>(k)];
            const auto& a = a_column(pr, k);
            const cplx sk = a_scale(pr, k);
            for (double d : {h, -h}) {
                double sa = 0.0, sb = 0.0;
                const cplx ds = d * sk;
                for (std::size_t i = 0; i < n; ++i) {
                    sb += pr.weights[i] * pw(std::abs(st.u[i] + d * b[i]), pr.p);
                    sa += pr.weights[i] * pw(std::abs(st.v[i] + ds * a[i]), pr.p);
                }
                ++evals;
                const double r = sb > 0.0 ? std::pow(sa / sb, 1.0 / pr.p) : 0.0;
                if (r > best * (1.0 + 1e-12)) {
                    best = r;
                    c[static_cast<std::size_t>(k)] += d;
                    for (std::size_t i = 0; i < n; ++i) {
                        st.u[i] += d * b[i];
                        st.v[i] += ds * a[i];
                    }
                    st.sa = sa;
                    st.sb = sb;
                    break;
                }
            }
        }
    return best;
}

// p = 2: largest generalized eigenvalue of (A^H W A, B^T W B) on the span.
double p2_extreme(const RatioProblem& pr) {
    const int n = pr.K() + 1;
    const std::size_t m = pr.weights.size();
    Eigen::MatrixXd B(static_cast<Eigen::Index>(m), n);
    Eigen::MatrixXcd A(static_cast<Eigen::Index>(m), n);
    for (int k = 0; k < n; ++k) {
        const auto& b = pr.basis_b[static_cast<std::size_t>(k)];
        const auto& a = a_column(pr, k);
        const cplx s = a_scale(pr, k);
        for (std::size_t i = 0; i < m; ++i) {
            const double sw = std::sqrt(pr.weights[i]);
            B(static_cast<Eigen::Index>(i), k) = sw * b[i];
            A(static_cast<Eigen::Index>(i), k) = sw * s * a[i];
        }
    }
    const Eigen::MatrixXd gb = B.transpose() * B;
    const Eigen::MatrixXcd ga = A.adjoint() * A;
    Eigen::LLT<Eigen::MatrixXd> llt(gb);
    if (llt.info() != Eigen::Success) throw accuracy_error("p=2 search: Gram matrix of the test span is not positive definite");
    const Eigen::MatrixXcd L = llt.matrixL().toDenseMatrix().cast<cplx>();
    const Eigen::MatrixXcd X = L.triangularView<Eigen::Lower>().solve(ga);
    const Eigen::MatrixXcd C = L.triangularView<Eigen::Lower>().solve(X.adjoint()).adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(C, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

std::vector<std::vector<double>> basis_columns(const SystemTag& tag, int K, const std::vector<double>& nodes) {
    std::vector<std::vector<double>> cols(static_cast<std::size_t>(K) + 1, std::vector<double>(nodes.size()));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::vector<double> b = basis_values(tag, K, nodes[i]);
        for (int k = 0; k <= K; ++k) cols[static_cast<std::size_t>(k)][i] = b[static_cast<std::size_t>(k)];
    }
    return cols;
}

// Cesaro-smoothed point evaluations at 0: c_k = m_{K,nu}(k) l_k(0).
std::vector<std::pair<std::string, std::vector<double>>> smoothed_point_candidates(double alpha, int K) {
    std::vector<std::pair<std::string, std::vector<double>>> out;
    const SystemTag tag{Family::l, alpha};
    const std::vector<double> at0 = basis_values(tag, K, 0.0);
    for (double nu : {2.0, 3.0, 4.0, 6.0}) {
        const MultiplierSeq w = cesaro_seq(K, nu);
        std::vector<double> c(static_cast<std::size_t>(K) + 1);
        for (int k = 0; k <= K; ++k) c[static_cast<std::size_t>(k)] = w(k).real() * at0[static_cast<std::size_t>(k)];
        out.emplace_back("smoothed-point-nu" + fmt(nu), std::move(c));
    }
    return out;
}

std::vector<int> dyadic_ladder(int K) {
    std::vector<int> out;
    for (int k = 4; k < K; k *= 2) out.push_back(k);
    out.push_back(K);
    return out;
}

void base_metadata(ExperimentReport& r, const ProbeConfig& cfg) {
    r.metadata["seed"] = std::to_string(cfg.seed);
    r.metadata["trials"] = std::to_string(cfg.trials);
    r.metadata["search"] = std::string(search_name(cfg.search));
    r.timestamp = utc_timestamp();
}

} // namespace

std::string_view search_name(SearchKind s) {
    switch (s) {
    case SearchKind::random: return "random";
    case SearchKind::coordinate_ascent: return "coordinate-ascent";
    case SearchKind::power_iteration: return "power-iteration";
    }
    return "?";
}

SearchKind parse_search(std::string_view name) {
    if (name == "random") return SearchKind::random;
    if (name == "coordinate-ascent") return SearchKind::coordinate_ascent;
    if (name == "power-iteration") return SearchKind::power_iteration;
    throw std::invalid_argument("unknown search '" + std::string(name) + "'");
}

void ProbeConfig::validate() const {
    params.validate();
    if (K < 4) throw std::invalid_argument("ProbeConfig: K must be >= 4");
    if (trials < 0) throw std::invalid_argument("ProbeConfig: trials must be >= 0");
}

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial, std::uint64_t index) {
    const std::uint64_t h = mix64(mix64(mix64(mix64(seed) ^ stream) ^ trial) ^ index);
    // 53 high bits, shifted off zero
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

double counter_cauchy(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial, std::uint64_t index) {
    return std::tan(std::numbers::pi * (counter_uniform(seed, stream, trial, index) - 0.5));
}

double RatioProblem::ratio(const std::vector<double>& c) const {
    return make_state(*this, c).ratio(p);
}

SearchResult ratio_search(const RatioProblem& prob, const ProbeConfig& cfg,
                          const std::vector<std::pair<std::string, std::vector<double>>>& structured) {
    const int K = prob.K();
    const int n_random = cfg.trials;
    const int n = n_random + static_cast<int>(structured.size());
    std::vector<double> value(static_cast<std::size_t>(n), 0.0);
    std::vector<long> evals(static_cast<std::size_t>(n), 0);
    parallel_for(n, cfg.threads, [&](int i) {
        std::vector<double> c;
        if (i < n_random) {
            c.resize(static_cast<std::size_t>(K) + 1);
            for (int k = 0; k <= K; ++k)
                c[static_cast<std::size_t>(k)] = counter_cauchy(cfg.seed, static_cast<std::uint64_t>(K),
                                                                static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k));
        } else {
            c = structured[static_cast<std::size_t>(i - n_random)].second;
        }
        long e = 1;
        value[static_cast<std::size_t>(i)] =
            cfg.search == SearchKind::coordinate_ascent ? coordinate_ascent(prob, c, e) : prob.ratio(c);
        evals[static_cast<std::size_t>(i)] = e;
    });
    SearchResult res;
    for (int i = 0; i < n; ++i) {
        res.evaluations += evals[static_cast<std::size_t>(i)];
        if (value[static_cast<std::size_t>(i)] > res.estimate) {
            res.estimate = value[static_cast<std::size_t>(i)];
            res.source = i < n_random ? "trial-" + std::to_string(i) : structured[static_cast<std::size_t>(i - n_random)].first;
        }
    }
    return res;
}

QuadRule probe_grid(double weight_exponent, double alpha, int K) {
    return weighted_composite_rule(weight_exponent, 4.0 * K + 2.0 * std::max(alpha, 0.0) + 60.0, 1.0, 32);
}

NormEstimate probe_multiplier(const MultiplierSeq& m, const ProbeConfig& cfg) {
    cfg.validate();
    const auto& sp = cfg.params;
    NormEstimate out;
    if (!thm11_range(sp))
        out.warnings.push_back("(alpha, p, gamma) outside the wbv embedding range; estimate is still a lower bound");

    if (sp.p == 2.0 && sp.gamma == sp.alpha) {
        // Parseval: T_m is diagonal in an orthonormal basis
        for (int K : dyadic_ladder(cfg.K)) {
            for (int k = 0; k <= K; ++k) out.estimate = std::max(out.estimate, std::abs(m(k)));
            out.ladder.emplace_back(K, out.estimate);
        }
        out.source = "parseval";
        return out;
    }
    if (cfg.search == SearchKind::power_iteration && sp.p != 2.0)
        throw std::invalid_argument("probe_multiplier: power-iteration search needs p = 2");

    const SystemTag tag{Family::l, sp.alpha};
    for (int K : dyadic_ladder(cfg.K)) {
        const QuadRule grid = probe_grid(sp.gamma, sp.alpha, K);
        RatioProblem prob;
        prob.weights = grid.weights;
        prob.basis_b = basis_columns(tag, K, grid.nodes);
        prob.p = sp.p;
        for (int k = 0; k <= K; ++k) prob.scale.push_back(m(k));
        double est;
        std::string src;
        if (cfg.search == SearchKind::power_iteration) {
            est = p2_extreme(prob);
            src = "p2-eigen";
        } else {
            SearchResult r = ratio_search(prob, cfg, smoothed_point_candidates(sp.alpha, K));
            est = r.estimate;
            src = r.source;
        }
        if (est > out.estimate) {
            out.estimate = est;
            out.source = "K" + std::to_string(K) + ":" + src;
        }
        out.ladder.emplace_back(K, out.estimate);
    }
    return out;
}

double operator_norm_lower_bound(const MultiplierSeq& m, const ProbeConfig& cfg) {
    return probe_multiplier(m, cfg).estimate;
}

SlopeFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_fit: need two or more points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0)) throw std::domain_error("loglog_fit: values must be positive");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    SlopeFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = std::log(y[i]) - (f.intercept + f.slope * std::log(x[i]));
        ss += r * r;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

ExperimentReport cesaro_growth_experiment(double alpha, double p, double nu, const std::vector<int>& n_list,
                                          const ProbeConfig& cfg, double plateau_slope) {
    ExperimentReport rep;
    rep.experiment = "cesaro-growth";
    rep.columns = {"n", "K", "estimate"};
    base_metadata(rep, cfg);
    rep.metadata["alpha"] = fmt(alpha);
    rep.metadata["p"] = fmt(p);
    rep.metadata["nu"] = fmt(nu);
    rep.metadata["gamma"] = fmt(alpha);
    rep.metadata["plateau_slope"] = fmt(plateau_slope);
    const double predicted = critical_index(alpha, p) - nu - 0.5;
    rep.diagnostics["predicted_slope"] = predicted;
    if (predicted <= 0.0) rep.warnings.push_back("nu + 1/2 >= s_c(p): no growth predicted");
    std::vector<double> xs, ys;
    for (int n : n_list) {
        ProbeConfig c = cfg;
        c.params = {alpha, p, alpha};
        c.K = std::max(4, 4 * n);
        const double est = operator_norm_lower_bound(cesaro_seq(n, nu), c);
        rep.rows.push_back({static_cast<double>(n), static_cast<double>(c.K), est});
        xs.push_back(n + 1.0);
        ys.push_back(est);
    }
    if (xs.size() >= 2) {
        const SlopeFit f = loglog_fit(xs, ys);
        rep.diagnostics["slope"] = f.slope;
        rep.diagnostics["intercept"] = f.intercept;
        rep.diagnostics["residual"] = f.residual;
        rep.diagnostics["plateau"] = f.slope < plateau_slope ? 1.0 : 0.0;
    }
    return rep;
}

ExperimentReport transplantation_experiment(double alpha, double beta, double p, double delta,
                                            const std::vector<int>& K_list, const ProbeConfig& cfg) {
    ExperimentReport rep;
    rep.experiment = "transplant";
    rep.columns = {"K", "max_ratio"};
    base_metadata(rep, cfg);
    rep.metadata["alpha"] = fmt(alpha);
    rep.metadata["beta"] = fmt(beta);
    rep.metadata["p"] = fmt(p);
    rep.metadata["delta"] = fmt(delta);
    const bool in_range = transplant_range(alpha, beta, p, delta);
    rep.diagnostics["in_range"] = in_range ? 1.0 : 0.0;
    if (!in_range) rep.warnings.push_back("delta outside the admissible transplantation range; growth is possible");
    const SystemTag ta{Family::script_l, alpha}, tb{Family::script_l, beta};
    std::vector<double> xs, ys;
    for (int K : K_list) {
        if (K < 0) throw std::invalid_argument("transplantation_experiment: K must be >= 0");
        // script-L^alpha carries x^{alpha/2}; weight x^delta folded into the grid
        const QuadRule grid = probe_grid(delta, std::max(alpha, beta), K);
        RatioProblem prob;
        prob.weights = grid.weights;
        prob.basis_b = basis_columns(tb, K, grid.nodes);
        prob.basis_a = basis_columns(ta, K, grid.nodes);
        prob.p = p;
        std::vector<std::pair<std::string, std::vector<double>>> units;
        for (int k : {0, K / 2, K}) {
            std::vector<double> c(static_cast<std::size_t>(K) + 1, 0.0);
            c[static_cast<std::size_t>(k)] = 1.0;
            units.emplace_back("unit-" + std::to_string(k), std::move(c));
        }
        const SearchResult r = ratio_search(prob, cfg, units);
        rep.rows.push_back({static_cast<double>(K), r.estimate});
        xs.push_back(std::max(K, 1));
        ys.push_back(r.estimate);
    }
    if (!ys.empty()) {
        rep.diagnostics["max_ratio"] = *std::max_element(ys.begin(), ys.end());
        rep.diagnostics["growth"] = ys.back() / ys.front();
    }
    if (xs.size() >= 2) {
        const SlopeFit f = loglog_fit(xs, ys);
        rep.diagnostics["slope"] = f.slope;
        rep.diagnostics["residual"] = f.residual;
    }
    return rep;
}

Battery default_battery(double alpha, double p) {
    Battery b;
    b.emplace_back("constant-1", MultiplierSeq::constant(1.0));
    for (int n : {4, 8, 16, 32}) b.emplace_back("cesaro-" + std::to_string(n), cesaro_seq(n, alpha + 2.0));
    b.emplace_back("oscillating", oscillating_seq(critical_index(alpha, p) + 0.5, 0.5));
    b.emplace_back("imag-power", imag_power_seq(1.0));
    b.emplace_back("rational", rational_seq());
    b.emplace_back("inverse-power", inverse_power_seq(1.0));
    return b;
}

ExperimentReport embedding_experiment(const Battery& battery, double alpha, double p, double gamma, double s,
                                      const ProbeConfig& cfg) {
    ExperimentReport rep;
    rep.experiment = "embedding";
    rep.columns = {"estimate", "wbv", "ratio"};
    rep.label_column = "sequence";
    base_metadata(rep, cfg);
    rep.metadata["alpha"] = fmt(alpha);
    rep.metadata["p"] = fmt(p);
    rep.metadata["gamma"] = fmt(gamma);
    rep.metadata["s"] = fmt(s);
    rep.metadata["K"] = std::to_string(cfg.K);
    ProbeConfig c = cfg;
    c.params = {alpha, p, gamma};
    const bool in_range = thm11_range(c.params) && s > alpha + 1.0;
    rep.diagnostics["in_range"] = in_range ? 1.0 : 0.0;
    if (!in_range) rep.warnings.push_back("parameters outside the wbv embedding hypotheses");
    WbvSpec ws;
    ws.q = 2.0;
    ws.s = s;
    ws.n_max = std::max(64, 2 * cfg.K);
    ws.tail_tol = 1e-8;
    double max_ratio = 0.0;
    for (const auto& [name, m] : battery) {
        const double est = operator_norm_lower_bound(m, c);
        const double w = wbv_norm(m, ws).norm;
        rep.labels.push_back(name);
        rep.rows.push_back({est, w, est / w});
        max_ratio = std::max(max_ratio, est / w);
    }
    rep.diagnostics["max_ratio"] = max_ratio;
    return rep;
}

ExperimentReport dsm_ratio_experiment(double alpha, const std::vector<double>& r_grid) {
    ExperimentReport rep;
    rep.experiment = "dsm-ratio";
    rep.columns = {"r", "sup_dsM", "ratio_a", "l2_moment", "ratio_b"};
    rep.label_column = "sequence";
    rep.timestamp = utc_timestamp();
    const double s = alpha + 1.5;
    rep.metadata["alpha"] = fmt(alpha);
    rep.metadata["s"] = fmt(s);
    for (const auto& [name, m] : Battery{{"constant-1", MultiplierSeq::constant(1.0)}, {"cesaro-16-2", cesaro_seq(16, 2.0)}}) {
        double ma = 0.0, mb = 0.0;
        for (const DsmRatioRow& row : dsm_ratios(m, s, alpha, r_grid)) {
            rep.labels.push_back(name);
            rep.rows.push_back({row.r, row.sup_dsM, row.ratio_a, row.l2_moment, row.ratio_b});
            ma = std::max(ma, row.ratio_a);
            mb = std::max(mb, row.ratio_b);
        }
        rep.diagnostics["max_ratio_a_" + name] = ma;
        rep.diagnostics["max_ratio_b_" + name] = mb;
    }
    return rep;
}

ExperimentReport kernel_profile_experiment(double alpha, int j_max) {
    ExperimentReport rep;
    rep.experiment = "kernel-profile";
    rep.columns = {"j", "near_above", "near_below", "far"};
    rep.timestamp = utc_timestamp();
    rep.metadata["alpha"] = fmt(alpha);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int j = 1; j <= j_max; ++j) {
        const double h = std::ldexp(1.0, -j), Y = std::ldexp(1.0, j);
        const double a = lemma23_theta_integral(1.0, 1.0 + h, alpha) * h;
        const double b = lemma23_theta_integral(1.0, 1.0 - h, alpha) * h;
        const double c = lemma23_theta_integral(1.0, Y, alpha) * std::pow(Y, 2.0 * alpha + 2.0);
        rep.rows.push_back({static_cast<double>(j), a, b, c});
        lo = std::min({lo, a, b, c});
        hi = std::max({hi, a, b, c});
    }
    const double near = std::sqrt(std::numbers::pi) * std::exp(log_gamma(alpha + 0.5) - log_gamma(alpha + 1.0));
    rep.diagnostics["near_limit"] = near / 2.0;
    rep.diagnostics["far_limit"] = near;
    rep.diagnostics["min_ratio"] = lo;
    rep.diagnostics["max_ratio"] = hi;
    return rep;
}

ExperimentReport squarefn_experiment(const Expansion& e, const std::vector<double>& sigmas, const std::vector<double>& xs) {
    ExperimentReport rep;
    rep.experiment = "squarefn";
    rep.columns = {"x", "f"};
    for (double s : sigmas) rep.columns.push_back("g_" + fmt(s));
    rep.timestamp = utc_timestamp();
    rep.metadata["alpha"] = fmt(e.tag().alpha);
    rep.metadata["K"] = std::to_string(e.K());
    for (double x : xs) {
        std::vector<double> row{x, std::abs(synthesize(e, x))};
        for (double s : sigmas) row.push_back(g_sigma(e, s, x));
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace laglab
