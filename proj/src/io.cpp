#include "laglab/io.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace laglab {

namespace {

double param(const json& p, const char* key) {
    if (!p.contains(key)) throw std::invalid_argument(std::string("sequence json: missing parameter '") + key + "'");
    return p.at(key).get<double>();
}

std::string_view kind_name(SeqKind k) {
    switch (k) {
    case SeqKind::table: return "table";
    case SeqKind::closed_form: return "closed-form";
    case SeqKind::sampled_function: return "sampled";
    }
    return "?";
}

} // namespace

std::string format_number(double v) {
    std::ostringstream o;
    o.precision(17);
    o << v;
    return o.str();
}

json complex_to_json(cplx z) {
    if (z.imag() == 0.0) return z.real();
    return json::array({z.real(), z.imag()});
}

cplx complex_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    throw std::invalid_argument("expected a number or [re, im]");
}

json sequence_to_json(const MultiplierSeq& m) {
    json j;
    j["kind"] = kind_name(m.kind());
    j["formula"] = m.formula();
    j["params"] = json::object();
    for (const auto& [k, v] : m.params()) j["params"][k] = v;
    if (m.kind() == SeqKind::table) {
        j["values"] = json::array();
        for (const cplx& v : m.table_values()) j["values"].push_back(complex_to_json(v));
    }
    return j;
}

MultiplierSeq sequence_from_json(const json& j) {
    const std::string formula = j.value("formula", std::string("table"));
    const json p = j.value("params", json::object());
    if (formula == "constant") return MultiplierSeq::constant({param(p, "re"), p.value("im", 0.0)});
    if (formula == "geometric") return MultiplierSeq::geometric(param(p, "r"));
    if (formula == "oscillating") return oscillating_seq(param(p, "zeta"), param(p, "eta"));
    if (formula == "cesaro") return cesaro_seq(static_cast<int>(param(p, "n")), param(p, "nu"));
    if (formula == "unit") return MultiplierSeq::unit(static_cast<int>(param(p, "j")));
    if (formula == "imag-power") return imag_power_seq(param(p, "tau"));
    if (formula == "rational") return rational_seq();
    if (formula == "inverse-power") return inverse_power_seq(param(p, "a"));
    if (!j.contains("values")) throw std::invalid_argument("sequence json: unknown formula '" + formula + "' and no values");
    std::vector<cplx> v;
    for (const json& x : j.at("values")) v.push_back(complex_from_json(x));
    MultiplierSeq::Params params;
    for (auto it = p.begin(); it != p.end(); ++it) params[it.key()] = it.value().get<double>();
    return MultiplierSeq::table(std::move(v), formula, std::move(params));
}

json expansion_to_json(const Expansion& e) {
    json j;
    j["family"] = family_name(e.tag().family);
    j["alpha"] = e.tag().alpha;
    j["coeffs"] = json::array();
    for (const cplx& c : e.coeffs()) j["coeffs"].push_back(complex_to_json(c));
    return j;
}

Expansion expansion_from_json(const json& j) {
    const SystemTag tag = SystemTag::make(parse_family(j.at("family").get<std::string>()), j.at("alpha").get<double>());
    std::vector<cplx> c;
    for (const json& x : j.at("coeffs")) c.push_back(complex_from_json(x));
    return Expansion(tag, std::move(c));
}

void write_coeffs_csv(const Expansion& e, std::ostream& out) {
    out << "# family=" << family_name(e.tag().family) << "\n# alpha=" << format_number(e.tag().alpha) << "\nk,re,im\n";
    for (std::size_t k = 0; k < e.coeffs().size(); ++k)
        out << k << ',' << format_number(e.coeffs()[k].real()) << ',' << format_number(e.coeffs()[k].imag()) << '\n';
}

json probe_config_to_json(const ProbeConfig& c) {
    return json{{"params", {{"alpha", c.params.alpha}, {"p", c.params.p}, {"gamma", c.params.gamma}}},
                {"K", c.K},
                {"trials", c.trials},
                {"seed", c.seed},
                {"search", search_name(c.search)},
                {"threads", c.threads}};
}

ProbeConfig probe_config_from_json(const json& j, ProbeConfig c) {
    if (j.contains("params")) {
        const json& p = j.at("params");
        c.params.alpha = p.value("alpha", c.params.alpha);
        c.params.p = p.value("p", c.params.p);
        c.params.gamma = p.value("gamma", c.params.gamma);
    }
    c.K = j.value("K", c.K);
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    if (j.contains("search")) c.search = parse_search(j.at("search").get<std::string>());
    c.threads = j.value("threads", c.threads);
    return c;
}

void write_report_csv(const ExperimentReport& r, std::ostream& out) {
    out << "# experiment=" << r.experiment << '\n';
    for (const auto& [k, v] : r.metadata) out << "# " << k << '=' << v << '\n';
    for (const auto& [k, v] : r.diagnostics) out << "# diag." << k << '=' << format_number(v) << '\n';
    for (const auto& w : r.warnings) out << "# warning=" << w << '\n';
    out << "# timestamp=" << r.timestamp << '\n';
    const bool labelled = !r.labels.empty();
    if (labelled) out << (r.label_column.empty() ? "label" : r.label_column) << ',';
    for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
    out << '\n';
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        if (labelled) out << r.labels[i] << ',';
        for (std::size_t c = 0; c < r.rows[i].size(); ++c) out << (c ? "," : "") << format_number(r.rows[i][c]);
        out << '\n';
    }
}

json report_to_json(const ExperimentReport& r) {
    json j;
    j["experiment"] = r.experiment;
    j["metadata"] = r.metadata;
    j["metadata"]["timestamp"] = r.timestamp;
    j["diagnostics"] = r.diagnostics;
    j["warnings"] = r.warnings;
    j["columns"] = r.columns;
    if (!r.labels.empty()) {
        j["label_column"] = r.label_column;
        j["labels"] = r.labels;
    }
    j["rows"] = r.rows;
    return j;
}

std::string strip_timestamp(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line))
        if (line.rfind("# timestamp=", 0) != 0) out += line + '\n';
    return out;
}

} // namespace laglab
