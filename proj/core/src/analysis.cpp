#include "pir/analysis.hpp"

#include <string>

#include "pir/errors.hpp"

namespace pir {

bool check_retrievability(const ParityCheck& parity, const RetrievalMatrix& v,
                          const SystemParams& params) {
  const FieldMatrix a = decode_system(v, parity, params);
  return a.rank() == a.cols();
}

PrivacyResult check_privacy(const RetrievalMatrix& v, const CollusionPattern& phi,
                            const SystemParams& params) {
  params.validate();
  for (const CollusionPattern::Set& alpha : phi.sets()) {
    std::vector<std::size_t> cols;
    cols.reserve(alpha.size() * params.node_queries);
    for (std::size_t k : alpha) {
      for (std::size_t r = 1; r <= params.node_queries; ++r) {
        cols.push_back(v.column_index(r, k));
      }
    }
    const FieldMatrix block = v.matrix().select_columns(cols);
    std::vector<std::size_t> bottom(params.mask_cols);
    for (std::size_t t = 0; t < params.mask_cols; ++t) bottom[t] = params.record_rows + t;
    const FieldMatrix mask_part = block.select_rows(bottom);
    if (block.rank() != mask_part.rank()) return {false, alpha};
  }
  return {true, std::nullopt};
}

namespace {

Prop1Result prop1_for_beta(const ParityCheck& parity, const SystemParams& params,
                           const std::vector<std::size_t>& beta_1based) {
  const std::int64_t t_plus_l =
      static_cast<std::int64_t>(params.mask_cols + params.record_rows);
  const std::int64_t lhs_factor = t_plus_l - static_cast<std::int64_t>(params.node_queries);
  std::vector<std::size_t> rows0;
  rows0.reserve(beta_1based.size());
  for (std::size_t k : beta_1based) {
    if (k < 1 || k > params.nodes) throw ParamError("beta index out of range");
    rows0.push_back(k - 1);
  }
  const FieldMatrix reduced = parity.matrix().drop_rows(rows0);
  const std::int64_t lhs =
      lhs_factor * static_cast<std::int64_t>(params.nodes - beta_1based.size());
  const std::int64_t rhs = static_cast<std::int64_t>(reduced.rank()) * t_plus_l;
  if (lhs > rhs) return {false, beta_1based};
  return {true, std::nullopt};
}

}  // namespace

Prop1Result check_prop1(const ParityCheck& parity, const SystemParams& params) {
  params.validate();
  if (params.nodes > 20) {
    throw ParamError("subset sweep over K=" + std::to_string(params.nodes) +
                     " nodes refused (2^K subsets); pass an explicit beta list");
  }
  const std::size_t k_count = params.nodes;
  for (std::uint32_t bits = 0; bits < (1u << k_count); ++bits) {
    std::vector<std::size_t> beta;
    for (std::size_t k = 0; k < k_count; ++k) {
      if (bits & (1u << k)) beta.push_back(k + 1);
    }
    const Prop1Result r = prop1_for_beta(parity, params, beta);
    if (!r.ok) return r;
  }
  return {true, std::nullopt};
}

Prop1Result check_prop1(const ParityCheck& parity, const SystemParams& params,
                        const std::vector<std::vector<std::size_t>>& betas) {
  params.validate();
  for (const std::vector<std::size_t>& beta : betas) {
    const Prop1Result r = prop1_for_beta(parity, params, beta);
    if (!r.ok) return r;
  }
  return {true, std::nullopt};
}

bool check_prop2(const SystemParams& params) {
  return params.node_queries <= params.mask_cols;
}

std::optional<Rational> tradeoff_bound(const Rational& sc, std::size_t nodes) {
  const Rational denom = sc * Rational(static_cast<std::int64_t>(nodes)) - Rational(1);
  if (denom <= Rational(0)) return std::nullopt;
  return sc / denom;
}

CertificationReport certify(const Scheme& scheme) {
  scheme.check_shapes();
  CertificationReport report;
  report.retrievable = check_retrievability(scheme.parity, scheme.retrieval, scheme.params);
  const PrivacyResult privacy = check_privacy(scheme.retrieval, scheme.phi, scheme.params);
  report.is_private = privacy.ok;
  report.failing_alpha = privacy.failing_alpha;
  const Prop1Result p1 = check_prop1(scheme.parity, scheme.params);
  report.prop1_ok = p1.ok;
  report.prop1_violating_beta = p1.violating_beta;
  report.prop2_ok = check_prop2(scheme.params);
  return report;
}

CostReport cost_report(const SystemParams& params) {
  CostReport report;
  report.sc = storage_cost(params);
  report.rc = retrieval_cost(params);
  report.bound = tradeoff_bound(report.sc, params.nodes);
  report.tight = report.bound.has_value() && report.rc == *report.bound;
  return report;
}

}  // namespace pir
