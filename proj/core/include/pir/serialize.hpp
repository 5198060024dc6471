#ifndef PIR_SERIALIZE_HPP
#define PIR_SERIALIZE_HPP

#include <string>
#include <vector>

#include "pir/analysis.hpp"
#include "pir/scheme.hpp"
#include "pir/sim.hpp"

namespace pir {

/* Scheme file: a JSON document with the integer keys "q", "N", "K", "S",
   "L", "T", "R", row arrays "P" (K x S) and "V" ((T+L) x RK), "phi" (arrays
   of 1-based node indices) and an optional "seed". Unknown keys are
   rejected, residues must be < q, dimensions must agree. */

Scheme scheme_from_json(const std::string& text);
std::string scheme_to_json(const Scheme& scheme, int indent = 2);

Scheme load_scheme_file(const std::string& path);
void save_scheme_file(const Scheme& scheme, const std::string& path);

std::string certification_to_json(const CertificationReport& report, int indent = -1);
std::string cost_report_to_json(const CostReport& report, int indent = -1);
std::string transcript_to_json(const Transcript& transcript, int indent = -1);
std::string observer_report_to_json(const ObserverReport& report, int indent = -1);

// Record input files: one record per line, (K-S)*L space-separated residues.
// Returns the per-record information vectors.
std::vector<std::vector<std::uint32_t>> parse_record_lines(const std::string& text,
                                                           const SystemParams& params);

}  // namespace pir

#endif  // PIR_SERIALIZE_HPP
