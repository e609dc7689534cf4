#ifndef LAGLAB_IO_HPP
#define LAGLAB_IO_HPP

#include "laglab/expansion_engine.hpp"
#include "laglab/probe_lab.hpp"
#include "laglab/sequence_calculus.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>

namespace laglab {

using json = nlohmann::json;

/// Complex values serialize as a number when real, else as [re, im].
json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

/// {"kind": "table" | "closed-form" | "sampled", "formula": id, "params": {...}, "values": [...]}.
/// Known formula ids (constant, geometric, oscillating, cesaro, unit, imag-power, rational,
/// inverse-power) are rebuilt from params; anything else needs "values".
json sequence_to_json(const MultiplierSeq& m);
MultiplierSeq sequence_from_json(const json& j);

/// {"family": ..., "alpha": ..., "coeffs": [...]}
json expansion_to_json(const Expansion& e);
Expansion expansion_from_json(const json& j);
/// k,re,im rows
void write_coeffs_csv(const Expansion& e, std::ostream& out);

/// {"params": {"alpha", "p", "gamma"}, "K", "trials", "seed", "search", "threads"}; missing keys keep defaults.
json probe_config_to_json(const ProbeConfig& c);
ProbeConfig probe_config_from_json(const json& j, ProbeConfig base = {});

/// Comment header ("# experiment=", sorted metadata, "# diag.<name>=", "# warning=",
/// then "# timestamp=" last), a column line, and rows printed with 17 significant digits.
void write_report_csv(const ExperimentReport& r, std::ostream& out);
json report_to_json(const ExperimentReport& r);

/// CSV text without the timestamp line, for reproducibility comparisons.
std::string strip_timestamp(const std::string& csv);

std::string format_number(double v);

} // namespace laglab

#endif
