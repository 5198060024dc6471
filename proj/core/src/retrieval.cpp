#include "pir/retrieval.hpp"

#include <string>

#include "pir/errors.hpp"

namespace pir {

RetrievalMatrix::RetrievalMatrix(FieldMatrix matrix, std::size_t selector_rows,
                                 std::size_t node_queries)
    : matrix_(std::move(matrix)), selector_rows_(selector_rows), node_queries_(node_queries) {
  if (selector_rows_ == 0 || selector_rows_ >= matrix_.rows()) {
    throw ParamError("retrieval matrix needs 1 <= L < T+L rows");
  }
  if (node_queries_ == 0 || matrix_.cols() % node_queries_ != 0) {
    throw ParamError("retrieval matrix columns must split into R per node");
  }
}

RetrievalMatrix cyclic_v(std::size_t nodes, std::size_t parity_cols, std::uint32_t q) {
  if (parity_cols < 1 || parity_cols >= nodes) throw ParamError("cyclic V needs 1 <= S < K");
  const std::size_t r_per_node = nodes - parity_cols;  // R = T = K - S, L = S
  PrimeField field(q);
  FieldMatrix m(field, nodes, r_per_node * nodes);
  for (std::size_t k = 1; k <= nodes; ++k) {
    for (std::size_t r = 1; r <= r_per_node; ++r) {
      // Unique row i in 1..K with k - i - r = 0 (mod K).
      const std::size_t i = (k + 2 * nodes - 1 - r) % nodes + 1;
      m(i - 1, (k - 1) * r_per_node + (r - 1)) = 1;
    }
  }
  return RetrievalMatrix(std::move(m), parity_cols, r_per_node);
}

RetrievalMatrix random_v(const SystemParams& params, Rng& rng) {
  const PrimeField field = params.validate();
  FieldMatrix m =
      FieldMatrix::uniform(field, params.retrieval_rows(), params.retrieval_cols(), rng);
  return RetrievalMatrix(std::move(m), params.record_rows, params.node_queries);
}

FieldMatrix random_mask(const SystemParams& params, Rng& rng) {
  const PrimeField field = params.validate();
  return FieldMatrix::uniform(field, params.node_vector_len(), params.mask_cols, rng);
}

std::vector<QueryBundle> queries_with_mask(const RetrievalMatrix& v, std::size_t m,
                                           const SystemParams& params,
                                           const FieldMatrix& mask) {
  const PrimeField field = params.validate();
  if (m < 1 || m > params.records) {
    throw ParamError("record index " + std::to_string(m) + " out of 1.." +
                     std::to_string(params.records));
  }
  if (mask.rows() != params.node_vector_len() || mask.cols() != params.mask_cols) {
    throw ParamError("mask shape mismatch");
  }
  const std::size_t len = params.node_vector_len();
  std::vector<QueryBundle> out(params.nodes);
  for (std::size_t k = 1; k <= params.nodes; ++k) {
    QueryBundle& bundle = out[k - 1];
    bundle.node = k;
    bundle.queries.resize(params.node_queries);
    for (std::size_t r = 1; r <= params.node_queries; ++r) {
      std::vector<std::uint32_t>& query = bundle.queries[r - 1];
      query.assign(len, 0);
      for (std::size_t t = 1; t <= params.mask_cols; ++t) {
        const std::uint32_t c = v.mask(t, r, k);
        if (c == 0) continue;
        for (std::size_t p = 0; p < len; ++p) {
          query[p] = field.add(query[p], field.mul(c, mask(p, t - 1)));
        }
      }
      for (std::size_t l = 1; l <= params.record_rows; ++l) {
        const std::size_t row = params.record_rows * (m - 1) + (l - 1);
        query[row] = field.add(query[row], v.selector(l, r, k));
      }
    }
  }
  return out;
}

std::pair<FieldMatrix, std::vector<QueryBundle>> gen_queries(const RetrievalMatrix& v,
                                                             std::size_t m,
                                                             const SystemParams& params,
                                                             Rng& rng) {
  if (m < 1 || m > params.records) {
    throw ParamError("record index " + std::to_string(m) + " out of 1.." +
                     std::to_string(params.records));
  }
  FieldMatrix mask = random_mask(params, rng);
  std::vector<QueryBundle> bundles = queries_with_mask(v, m, params, mask);
  return {std::move(mask), std::move(bundles)};
}

AnswerBundle respond(const NodeContent& content, const QueryBundle& bundle,
                     const PrimeField& field) {
  AnswerBundle out;
  out.node = bundle.node;
  out.values.reserve(bundle.queries.size());
  for (const std::vector<std::uint32_t>& query : bundle.queries) {
    if (query.size() != content.symbols.size()) {
      throw ParamError("query length " + std::to_string(query.size()) +
                       " does not match stored vector length " +
                       std::to_string(content.symbols.size()));
    }
    std::uint32_t acc = 0;
    for (std::size_t p = 0; p < query.size(); ++p) {
      acc = field.add(acc, field.mul(query[p], content.symbols[p]));
    }
    out.values.push_back(acc);
  }
  return out;
}

FieldMatrix decode_system(const RetrievalMatrix& v, const ParityCheck& parity,
                          const SystemParams& params) {
  const PrimeField field = params.validate();
  const std::size_t k_count = params.nodes;
  const std::size_t s_count = params.parity_cols;
  const std::size_t l_count = params.record_rows;
  const std::size_t t_count = params.mask_cols;
  const std::size_t r_count = params.node_queries;
  const std::size_t unknowns_per_node = t_count + l_count;

  const std::size_t rows = s_count * unknowns_per_node + k_count * r_count;
  const std::size_t cols = k_count * unknowns_per_node;
  FieldMatrix a(field, rows, cols);

  const auto record_col = [&](std::size_t k, std::size_t l) {  // 1-based k, l
    return (k - 1) * unknowns_per_node + (l - 1);
  };
  const auto mask_col = [&](std::size_t k, std::size_t t) {  // 1-based k, t
    return (k - 1) * unknowns_per_node + l_count + (t - 1);
  };

  std::size_t row = 0;
  // sum_k p(k,s) w_{t,k} = 0
  for (std::size_t t = 1; t <= t_count; ++t) {
    for (std::size_t s = 1; s <= s_count; ++s, ++row) {
      for (std::size_t k = 1; k <= k_count; ++k) {
        a(row, mask_col(k, t)) = parity.matrix()(k - 1, s - 1);
      }
    }
  }
  // sum_k p(k,s) w*_{l,k} = 0
  for (std::size_t l = 1; l <= l_count; ++l) {
    for (std::size_t s = 1; s <= s_count; ++s, ++row) {
      for (std::size_t k = 1; k <= k_count; ++k) {
        a(row, record_col(k, l)) = parity.matrix()(k - 1, s - 1);
      }
    }
  }
  // sum_t v_{t,r,k} w_{t,k} + sum_l v*_{l,r,k} w*_{l,k} = A_{r,k}
  for (std::size_t k = 1; k <= k_count; ++k) {
    for (std::size_t r = 1; r <= r_count; ++r, ++row) {
      for (std::size_t l = 1; l <= l_count; ++l) a(row, record_col(k, l)) = v.selector(l, r, k);
      for (std::size_t t = 1; t <= t_count; ++t) a(row, mask_col(k, t)) = v.mask(t, r, k);
    }
  }
  return a;
}

RecordMatrix decode(const RetrievalMatrix& v, const ParityCheck& parity,
                    const std::vector<AnswerBundle>& answers, std::size_t m,
                    const SystemParams& params) {
  const PrimeField field = params.validate();
  if (m < 1 || m > params.records) throw ParamError("record index out of range");
  if (answers.size() != params.nodes) throw ParamError("expected one answer bundle per node");
  for (std::size_t k = 1; k <= params.nodes; ++k) {
    if (answers[k - 1].node != k || answers[k - 1].values.size() != params.node_queries) {
      throw ParamError("answer bundle for node " + std::to_string(k) + " malformed");
    }
  }

  const FieldMatrix a = decode_system(v, parity, params);
  std::vector<std::uint32_t> rhs(a.rows(), 0);
  std::size_t row = params.parity_cols * (params.mask_cols + params.record_rows);
  for (std::size_t k = 1; k <= params.nodes; ++k) {
    for (std::size_t r = 1; r <= params.node_queries; ++r, ++row) {
      rhs[row] = answers[k - 1].values[r - 1];
    }
  }

  const SolveResult result = a.solve_unique(rhs);
  if (result.status == SolveStatus::underdetermined) {
    throw DecodeError("decode system underdetermined: retrievability condition violated");
  }
  if (result.status == SolveStatus::no_solution) {
    throw DecodeError("decode system inconsistent: answers corrupted or scheme mismatch");
  }

  const std::size_t unknowns_per_node = params.mask_cols + params.record_rows;
  FieldMatrix record(field, params.record_rows, params.nodes);
  for (std::size_t k = 1; k <= params.nodes; ++k) {
    for (std::size_t l = 1; l <= params.record_rows; ++l) {
      record(l - 1, k - 1) = result.solution[(k - 1) * unknowns_per_node + (l - 1)];
    }
  }
  return RecordMatrix{std::move(record)};
}

Rational retrieval_cost(const SystemParams& params) {
  return Rational(static_cast<std::int64_t>(params.node_queries),
                  static_cast<std::int64_t>(params.record_rows *
                                            (params.nodes - params.parity_cols)));
}

}  // namespace pir
