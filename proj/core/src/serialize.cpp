#include "pir/serialize.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pir/errors.hpp"

namespace pir {
namespace {

using Json = nlohmann::ordered_json;

std::uint64_t require_uint(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number_unsigned()) {
    throw ParseError(std::string("key \"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

FieldMatrix matrix_from(const Json& rows_json, const PrimeField& field, std::size_t rows,
                        std::size_t cols, const char* key) {
  if (!rows_json.is_array() || rows_json.size() != rows) {
    throw ParseError(std::string("\"") + key + "\" must be an array of " +
                     std::to_string(rows) + " rows");
  }
  FieldMatrix m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = rows_json.at(i);
    if (!row.is_array() || row.size() != cols) {
      throw ParseError(std::string("row ") + std::to_string(i + 1) + " of \"" + key +
                       "\" must hold " + std::to_string(cols) + " integers");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const Json& e = row.at(j);
      if (!e.is_number_unsigned() || e.get<std::uint64_t>() >= field.q()) {
        throw ParseError(std::string("entry in \"") + key + "\" is not a residue below q");
      }
      m(i, j) = e.get<std::uint32_t>();
    }
  }
  return m;
}

Json matrix_rows(const FieldMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string dump(const Json& j, int indent) { return j.dump(indent); }

}  // namespace

Scheme scheme_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("scheme file must be a JSON object");

  static const char* const known[] = {"q", "N", "K", "S", "L", "T", "R", "P", "V", "phi", "seed"};
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ParseError("unknown key \"" + key + "\"");
  }

  SystemParams params;
  params.q = static_cast<std::uint32_t>(require_uint(j, "q"));
  params.records = require_uint(j, "N");
  params.nodes = require_uint(j, "K");
  params.parity_cols = require_uint(j, "S");
  params.record_rows = require_uint(j, "L");
  params.mask_cols = require_uint(j, "T");
  params.node_queries = require_uint(j, "R");
  const PrimeField field = [&] {
    try {
      return params.validate();
    } catch (const ParamError& e) {
      throw ParseError(e.what());
    }
  }();

  try {
    FieldMatrix p = matrix_from(j.contains("P") ? j.at("P") : Json(), field, params.nodes,
                                params.parity_cols, "P");
    FieldMatrix v = matrix_from(j.contains("V") ? j.at("V") : Json(), field,
                                params.retrieval_rows(), params.retrieval_cols(), "V");
    if (!j.contains("phi") || !j.at("phi").is_array()) {
      throw ParseError("\"phi\" must be an array of node-index arrays");
    }
    std::vector<CollusionPattern::Set> sets;
    for (const Json& a : j.at("phi")) {
      if (!a.is_array()) throw ParseError("\"phi\" must be an array of node-index arrays");
      CollusionPattern::Set s;
      for (const Json& e : a) {
        if (!e.is_number_unsigned()) throw ParseError("collusion indices must be integers");
        s.push_back(e.get<std::size_t>());
      }
      sets.push_back(std::move(s));
    }
    Scheme scheme{params, ParityCheck(std::move(p)),
                  RetrievalMatrix(std::move(v), params.record_rows, params.node_queries),
                  CollusionPattern(std::move(sets), params.nodes), std::nullopt};
    if (j.contains("seed")) scheme.seed = require_uint(j, "seed");
    scheme.check_shapes();
    return scheme;
  } catch (const ParamError& e) {
    throw ParseError(e.what());
  }
}

std::string scheme_to_json(const Scheme& scheme, int indent) {
  Json j;
  j["q"] = scheme.params.q;
  j["N"] = scheme.params.records;
  j["K"] = scheme.params.nodes;
  j["S"] = scheme.params.parity_cols;
  j["L"] = scheme.params.record_rows;
  j["T"] = scheme.params.mask_cols;
  j["R"] = scheme.params.node_queries;
  j["P"] = matrix_rows(scheme.parity.matrix());
  j["V"] = matrix_rows(scheme.retrieval.matrix());
  Json phi = Json::array();
  for (const CollusionPattern::Set& s : scheme.phi.sets()) phi.push_back(s);
  j["phi"] = std::move(phi);
  if (scheme.seed) j["seed"] = *scheme.seed;
  return dump(j, indent);
}

Scheme load_scheme_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scheme file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return scheme_from_json(text.str());
}

void save_scheme_file(const Scheme& scheme, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write scheme file " + path);
  out << scheme_to_json(scheme, 2) << "\n";
}

std::string certification_to_json(const CertificationReport& report, int indent) {
  Json j;
  j["retrievable"] = report.retrievable;
  j["private"] = report.is_private;
  j["failing_alpha"] = report.failing_alpha ? Json(*report.failing_alpha) : Json(nullptr);
  j["prop1_ok"] = report.prop1_ok;
  j["prop1_violating_beta"] =
      report.prop1_violating_beta ? Json(*report.prop1_violating_beta) : Json(nullptr);
  j["prop2_ok"] = report.prop2_ok;
  j["certified"] = report.certified();
  return dump(j, indent);
}

std::string cost_report_to_json(const CostReport& report, int indent) {
  Json j;
  j["sc"] = report.sc.str();
  j["rc"] = report.rc.str();
  j["bound"] = report.bound ? Json(report.bound->str()) : Json(nullptr);
  j["tight"] = report.tight;
  return dump(j, indent);
}

std::string transcript_to_json(const Transcript& transcript, int indent) {
  Json j;
  j["m"] = transcript.requested;
  j["mask"] = matrix_rows(transcript.mask);
  Json queries = Json::array();
  for (const QueryBundle& b : transcript.queries) {
    Json jb;
    jb["node"] = b.node;
    jb["vectors"] = b.queries;
    queries.push_back(std::move(jb));
  }
  j["queries"] = std::move(queries);
  Json answers = Json::array();
  for (const AnswerBundle& b : transcript.answers) {
    Json jb;
    jb["node"] = b.node;
    jb["values"] = b.values;
    answers.push_back(std::move(jb));
  }
  j["answers"] = std::move(answers);
  j["decoded"] = transcript.decoded ? matrix_rows(transcript.decoded->data) : Json(nullptr);
  return dump(j, indent);
}

std::string observer_report_to_json(const ObserverReport& report, int indent) {
  Json j;
  j["runs"] = report.runs;
  j["defined"] = report.defined;
  if (report.defined) {
    j["distance"] = report.distance;
    j["band"] = report.band;
    j["within_band"] = report.within_band;
  } else {
    j["distance"] = nullptr;
    j["band"] = nullptr;
    j["within_band"] = nullptr;
  }
  return dump(j, indent);
}

std::vector<std::vector<std::uint32_t>> parse_record_lines(const std::string& text,
                                                           const SystemParams& params) {
  params.validate();
  std::vector<std::vector<std::uint32_t>> records;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::vector<std::uint32_t> info;
    std::string token;
    while (tokens >> token) {
      try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(token, &used);
        if (used != token.size() || v >= params.q) throw std::invalid_argument(token);
        info.push_back(static_cast<std::uint32_t>(v));
      } catch (const std::logic_error&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad residue '" + token + "'");
      }
    }
    if (info.empty()) continue;  // blank line
    if (info.size() != params.info_symbols()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(params.info_symbols()) + " residues, got " +
                       std::to_string(info.size()));
    }
    records.push_back(std::move(info));
  }
  if (records.size() != params.records) {
    throw ParseError("expected " + std::to_string(params.records) + " record lines, found " +
                     std::to_string(records.size()));
  }
  return records;
}

}  // namespace pir
