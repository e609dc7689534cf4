// laglab command line front end. Every subcommand builds a report and writes it
// as CSV (comment header + table) or JSON, to --out or stdout.

#include "laglab/convolution_semigroup.hpp"
#include "laglab/errors.hpp"
#include "laglab/expansion_engine.hpp"
#include "laglab/io.hpp"
#include "laglab/probe_lab.hpp"
#include "laglab/sequence_calculus.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace laglab;

namespace {

struct Common {
    double alpha = 0.0, beta = 0.0, p = 2.0, gamma = 0.0, delta = 0.0, s = 1.5, q = 2.0, tol = 1e-10;
    int K = 16, trials = 64, threads = 0;
    std::uint64_t seed = 1;
    std::string search = "coordinate-ascent";
    std::string out, format = "csv", config;
};

json read_json_arg(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot open '" + arg + "'");
    return json::parse(in);
}

// --seq accepts inline JSON, a JSON file, or the short form "formula:key=value,key=value".
MultiplierSeq parse_sequence(const std::string& arg) {
    if (arg.empty()) throw std::invalid_argument("a multiplier sequence is required (--seq)");
    if (arg.front() == '{' || std::filesystem::exists(arg)) return sequence_from_json(read_json_arg(arg));
    json j;
    const auto colon = arg.find(':');
    j["formula"] = arg.substr(0, colon);
    j["params"] = json::object();
    if (colon != std::string::npos) {
        std::stringstream ss(arg.substr(colon + 1));
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("bad sequence parameter '" + kv + "'");
            j["params"][kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
    }
    if (j["formula"] == "table") throw std::invalid_argument("table sequences need JSON with \"values\"");
    return sequence_from_json(j);
}

std::optional<Expansion> load_expansion(const std::string& input, const std::vector<double>& coeffs, Family fam,
                                        double alpha) {
    if (!input.empty()) return expansion_from_json(read_json_arg(input));
    if (!coeffs.empty()) return Expansion(SystemTag::make(fam, alpha), std::vector<cplx>(coeffs.begin(), coeffs.end()));
    return std::nullopt;
}

ProbeConfig probe_config(const Common& c, const CLI::App& app) {
    ProbeConfig cfg;
    if (!c.config.empty()) cfg = probe_config_from_json(read_json_arg(c.config));
    // explicit flags win over the config file
    auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--alpha")) cfg.params.alpha = c.alpha;
    if (given("--p")) cfg.params.p = c.p;
    if (given("--gamma")) cfg.params.gamma = c.gamma;
    if (given("--K")) cfg.K = c.K;
    if (given("--trials")) cfg.trials = c.trials;
    if (given("--seed")) cfg.seed = c.seed;
    if (given("--search")) cfg.search = parse_search(c.search);
    if (given("--threads")) cfg.threads = c.threads;
    return cfg;
}

class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot write '" + path + "'");
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void emit(const ExperimentReport& r, const Common& c) {
    Sink sink(c.out);
    if (c.format == "json")
        sink.os() << report_to_json(r).dump(2) << '\n';
    else
        write_report_csv(r, sink.os());
}

void emit_expansion(const Expansion& e, const Common& c, const std::map<std::string, double>& extra) {
    Sink sink(c.out);
    if (c.format == "json") {
        json j = expansion_to_json(e);
        for (const auto& [k, v] : extra) j[k] = v;
        sink.os() << j.dump(2) << '\n';
        return;
    }
    for (const auto& [k, v] : extra) sink.os() << "# " << k << '=' << format_number(v) << '\n';
    write_coeffs_csv(e, sink.os());
}

std::string fmt(double v) { return format_number(v); }

ExperimentReport base_report(std::string name) {
    ExperimentReport r;
    r.experiment = std::move(name);
    r.timestamp = utc_timestamp();
    return r;
}

// Test functions for `coeffs`, each with a decay certificate.
struct NamedFunction {
    ComplexFn f;
    DecayCertificate cert;
};

NamedFunction named_function(const std::string& name, double alpha, double t) {
    if (name == "exp") return {[](double x) { return cplx{std::exp(-0.5 * x)}; }, {1.0, 0.5, 1.0}};
    if (name == "gaussian") return {[](double x) { return cplx{std::exp(-0.5 * x * x)}; }, {1.0, 0.5, 2.0}};
    if (name == "poisson") {
        const PoissonState st = PoissonState::make(alpha, t);
        return {[st](double y) { return cplx{poisson_kernel(st, y)}; }, poisson_certificate(st)};
    }
    throw std::invalid_argument("unknown function '" + name + "' (exp, gaussian, poisson)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"laglab: Laguerre expansions, multipliers and norm probes"};
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    app.add_option("--alpha", c.alpha, "Laguerre parameter alpha > -1");
    app.add_option("--beta", c.beta, "second Laguerre parameter (transplant, thm41 range)");
    app.add_option("--p", c.p, "Lebesgue exponent");
    app.add_option("--gamma", c.gamma, "weight exponent of x^gamma dx");
    app.add_option("--delta", c.delta, "weight exponent for transplantation");
    app.add_option("--s", c.s, "smoothness order");
    app.add_option("--q", c.q, "wbv block exponent (inf allowed)");
    app.add_option("--K", c.K, "truncation");
    app.add_option("--trials", c.trials, "random trials per K");
    app.add_option("--seed", c.seed, "64-bit seed");
    app.add_option("--search", c.search, "random | coordinate-ascent | power-iteration");
    app.add_option("--threads", c.threads, "worker threads (0 = all cores; results do not depend on it)");
    app.add_option("--tol", c.tol, "absolute tolerance");
    app.add_option("--out", c.out, "output path (default stdout)");
    app.add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--config", c.config, "ProbeConfig JSON file (flags override it)");

    std::string seq_arg, family = "l", input, fn = "exp";
    std::vector<double> xs, coeffs, sigmas{1.0};
    std::vector<int> n_list{4, 8, 16, 32}, K_list{8, 16, 32};
    double nu = 0.0, t = 0.5, lambda = 0.0;

    auto* eval = app.add_subcommand("eval", "basis functions b_0..b_K at --x points, or sequence values with --seq");
    eval->add_option("--family", family, "l | script-L | phi | psi");
    eval->add_option("--x", xs, "evaluation points")->delimiter(',');
    eval->add_option("--seq", seq_arg, "sequence: JSON, JSON file, or formula:key=value,...");

    auto* coeffs_cmd = app.add_subcommand("coeffs", "analyze a test function (or re-analyze an expansion) into K+1 coefficients");
    coeffs_cmd->add_option("--family", family, "target system");
    coeffs_cmd->add_option("--function", fn, "exp | gaussian | poisson");
    coeffs_cmd->add_option("--t", t, "Poisson time for --function poisson");
    coeffs_cmd->add_option("--input", input, "expansion JSON to convert into --family");

    auto* mult = app.add_subcommand("multiplier", "apply a multiplier to an expansion and report norms");
    mult->add_option("--seq", seq_arg, "multiplier sequence")->required();
    mult->add_option("--input", input, "expansion JSON");
    mult->add_option("--coeffs", coeffs, "coefficients (with --family, --alpha)")->delimiter(',');
    mult->add_option("--family", family, "system of --coeffs");

    auto* wbv = app.add_subcommand("wbv", "wbv_{q,s} norm with its dyadic block profile (n up to --K)");
    wbv->add_option("--seq", seq_arg, "sequence")->required();

    auto* ces = app.add_subcommand("cesaro-growth", "lower bounds for Cesaro means m_{n,nu} in M^p_{alpha,alpha}");
    ces->add_option("--nu", nu, "Cesaro order");
    ces->add_option("--n", n_list, "n values")->delimiter(',');

    auto* tr = app.add_subcommand("transplant", "max ratio ||sum b L^alpha|| / ||sum b L^beta|| in L^p(x^delta)");
    tr->add_option("--Ks", K_list, "truncations")->delimiter(',');

    auto* sq = app.add_subcommand("squarefn", "g_sigma (and g_lambda* with --lambda) of a psi-expansion on an x grid");
    sq->add_option("--input", input, "psi-expansion JSON");
    sq->add_option("--coeffs", coeffs, "psi coefficients")->delimiter(',');
    sq->add_option("--sigma", sigmas, "sigma values >= 1")->delimiter(',');
    sq->add_option("--x", xs, "points")->delimiter(',');
    sq->add_option("--lambda", lambda, "also compute g_lambda* (needs lambda > alpha + 1)");

    auto* probe = app.add_subcommand("probe-norm", "multiplier norm lower bound along the dyadic K ladder");
    probe->add_option("--seq", seq_arg, "multiplier sequence")->required();

    auto* ranges = app.add_subcommand("ranges", "parameter maps and range tests for (alpha, p, gamma)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const ProbeConfig cfg = probe_config(c, app);
        const double alpha = cfg.params.alpha, p = cfg.params.p, gamma = cfg.params.gamma;

        if (*eval) {
            ExperimentReport r = base_report("eval");
            r.metadata["alpha"] = fmt(alpha);
            r.metadata["K"] = std::to_string(cfg.K);
            if (!seq_arg.empty()) {
                const MultiplierSeq m = parse_sequence(seq_arg);
                r.metadata["sequence"] = sequence_to_json(m).dump();
                r.columns = {"k", "re", "im"};
                for (int k = 0; k <= cfg.K; ++k) r.rows.push_back({double(k), m(k).real(), m(k).imag()});
            } else {
                const SystemTag tag = SystemTag::make(parse_family(family), alpha);
                r.metadata["family"] = family;
                r.columns = {"x"};
                for (int k = 0; k <= cfg.K; ++k) r.columns.push_back("b_" + std::to_string(k));
                if (xs.empty()) xs = {0.5, 1.0, 2.0};
                for (double x : xs) {
                    std::vector<double> row{x};
                    for (double v : basis_values(tag, cfg.K, x)) row.push_back(v);
                    r.rows.push_back(std::move(row));
                }
            }
            emit(r, c);
        } else if (*coeffs_cmd) {
            const SystemTag tag = SystemTag::make(parse_family(family), alpha);
            NamedFunction nf;
            if (!input.empty()) {
                const Expansion src = expansion_from_json(read_json_arg(input));
                nf = {[src](double x) { return synthesize(src, x); }, decay_certificate(src)};
            } else {
                nf = named_function(fn, alpha, t);
            }
            const Expansion e = analyze(nf.f, tag, cfg.K, c.tol, nf.cert);
            emit_expansion(e, c, {{"l2", e.l2()}});
        } else if (*mult) {
            const MultiplierSeq m = parse_sequence(seq_arg);
            auto e = load_expansion(input, coeffs, parse_family(family), alpha);
            if (!e) throw std::invalid_argument("multiplier needs --input or --coeffs");
            const Expansion out = apply_multiplier(m, *e);
            std::map<std::string, double> norms{{"l2_in", e->l2()}, {"l2_out", out.l2()}};
            if (e->tag().family == Family::l || e->tag().family == Family::script_l) {
                // weighted L^p norms of the synthesized functions, x^gamma dx
                const NormSpec spec = NormSpec::plain(p, gamma);
                auto norm_of = [&](const Expansion& x) {
                    return weighted_norm([&](double y) { return synthesize(x, y); }, spec, 1e-8, decay_certificate(x));
                };
                const double a = norm_of(*e), b = norm_of(out);
                norms["lp_in"] = a;
                norms["lp_out"] = b;
                if (a > 0.0) norms["lp_ratio"] = b / a;
            }
            emit_expansion(out, c, norms);
        } else if (*wbv) {
            const MultiplierSeq m = parse_sequence(seq_arg);
            WbvSpec ws;
            ws.q = c.q;
            ws.s = c.s;
            ws.n_max = cfg.K;
            ws.tail_tol = std::max(c.tol, 1e-12);
            const WbvReport w = wbv_norm(m, ws);
            ExperimentReport r = base_report("wbv");
            r.metadata["sequence"] = sequence_to_json(m).dump();
            r.metadata["q"] = fmt(c.q);
            r.metadata["s"] = fmt(c.s);
            r.metadata["n_max"] = std::to_string(cfg.K);
            r.diagnostics = {{"norm", w.norm}, {"sup_norm", w.sup_norm}, {"block_sup", w.block_sup},
                             {"argmax_n", double(w.argmax_n)}, {"sup_at_boundary", w.sup_at_boundary ? 1.0 : 0.0}};
            if (w.sup_at_boundary) r.warnings.push_back("block sup attained in the last octave; raise --K");
            r.columns = {"n", "block"};
            for (const auto& [n, v] : w.profile) r.rows.push_back({double(n), v});
            emit(r, c);
        } else if (*ces) {
            emit(cesaro_growth_experiment(alpha, p, nu, n_list, cfg), c);
        } else if (*tr) {
            emit(transplantation_experiment(alpha, c.beta, p, c.delta, K_list, cfg), c);
        } else if (*sq) {
            auto e = load_expansion(input, coeffs, Family::psi, alpha);
            if (!e) e = unit_expansion(SystemTag::make(Family::psi, alpha), 0, 0);
            if (xs.empty()) xs = {0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
            ExperimentReport r = squarefn_experiment(*e, sigmas, xs);
            if (lambda > 0.0) {
                const GLambdaKernel kern = GLambdaKernel::make(e->tag().alpha, lambda);
                r.columns.push_back("g_lambda_star");
                r.columns.push_back("g_lambda_star_err");
                r.metadata["lambda"] = fmt(lambda);
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    const GLambdaResult g = g_lambda_star(*e, kern, xs[i]);
                    r.rows[i].push_back(g.value);
                    r.rows[i].push_back(g.error_estimate);
                }
            }
            emit(r, c);
        } else if (*probe) {
            const MultiplierSeq m = parse_sequence(seq_arg);
            const NormEstimate est = probe_multiplier(m, cfg);
            ExperimentReport r = base_report("probe-norm");
            r.metadata["alpha"] = fmt(alpha);
            r.metadata["p"] = fmt(p);
            r.metadata["gamma"] = fmt(gamma);
            r.metadata["K"] = std::to_string(cfg.K);
            r.metadata["trials"] = std::to_string(cfg.trials);
            r.metadata["seed"] = std::to_string(cfg.seed);
            r.metadata["search"] = std::string(search_name(cfg.search));
            r.metadata["sequence"] = sequence_to_json(m).dump();
            r.metadata["source"] = est.source;
            r.diagnostics["estimate"] = est.estimate;
            r.warnings = est.warnings;
            r.columns = {"K", "estimate"};
            for (const auto& [K, v] : est.ladder) r.rows.push_back({double(K), v});
            emit(r, c);
        } else if (*ranges) {
            const MultiplierSpaceParams sp{alpha, p, gamma};
            sp.validate();
            ExperimentReport r = base_report("ranges");
            r.label_column = "request";
            r.columns = {"alpha", "p", "gamma"};
            for (const char* name : {"dual", "script-shift", "phi-shift"}) {
                const auto v = std::get<MultiplierSpaceParams>(space_arithmetic(sp, parse_space_request(name)));
                r.labels.push_back(name);
                r.rows.push_back({v.alpha, v.p, v.gamma});
            }
            r.metadata["beta"] = fmt(c.beta);
            r.metadata["delta"] = fmt(c.delta);
            r.diagnostics["thm11_range"] = std::get<bool>(space_arithmetic(sp, SpaceRequest::thm11_range));
            r.diagnostics["lep_range"] = std::get<bool>(space_arithmetic(sp, SpaceRequest::lep_range));
            r.diagnostics["thm41_range"] = transplant_range(alpha, c.beta, p, c.delta);
            r.diagnostics["critical_index"] = critical_index(alpha, p);
            emit(r, c);
        }
    } catch (const std::exception& e) {
        std::cerr << "laglab: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
