#include "pir/storage.hpp"

#include <string>

#include "pir/errors.hpp"

namespace pir {

ParityCheck::ParityCheck(FieldMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.cols() == 0 || matrix_.cols() >= matrix_.rows()) {
    throw ParamError("parity check must be K x S with 1 <= S < K");
  }
  if (matrix_.rank() != matrix_.cols()) throw ParamError("parity check is not full rank");
}

ParityCheck make_mds_parity(std::size_t nodes, std::size_t parity_cols, std::uint32_t q) {
  if (q < nodes) {
    throw ParamError("MDS parity needs q >= K for distinct evaluation points (q=" +
                     std::to_string(q) + ", K=" + std::to_string(nodes) + ")");
  }
  PrimeField field(q);
  FieldMatrix p(field, nodes, parity_cols);
  for (std::size_t k = 0; k < nodes; ++k) {
    const std::uint32_t point = static_cast<std::uint32_t>(k % q);
    for (std::size_t s = 0; s < parity_cols; ++s) p(k, s) = field.pow(point, s);
  }
  return ParityCheck(std::move(p));
}

ParityCheck make_uncoded_parity(std::size_t nodes, std::uint32_t q) {
  if (nodes < 2) throw ParamError("uncoded parity needs K >= 2");
  PrimeField field(q);
  FieldMatrix p(field, nodes, nodes - 1);
  for (std::size_t j = 0; j + 1 < nodes; ++j) {
    p(j, j) = 1;
    p(j + 1, j) = field.neg(1);
  }
  return ParityCheck(std::move(p));
}

RecordMatrix encode_record(const std::vector<std::uint32_t>& info, const ParityCheck& parity,
                           std::size_t record_rows) {
  const PrimeField& field = parity.matrix().field();
  const std::size_t nodes = parity.nodes();
  const std::size_t s = parity.parity_cols();
  const std::size_t info_cols = nodes - s;
  if (info.size() != info_cols * record_rows) {
    throw ParamError("info length " + std::to_string(info.size()) + ", expected " +
                     std::to_string(info_cols * record_rows));
  }

  // Parity lives in the last S columns; the corresponding S x S row block of
  // P must be invertible there.
  std::vector<std::size_t> tail(s);
  for (std::size_t i = 0; i < s; ++i) tail[i] = info_cols + i;
  const FieldMatrix parity_block = parity.matrix().select_rows(tail);
  const auto block_inv = parity_block.inverse();
  if (!block_inv) {
    throw EncodingError("parity rows " + std::to_string(info_cols + 1) + ".." +
                        std::to_string(nodes) + " of P are singular; systematic completion "
                        "impossible at those positions");
  }

  FieldMatrix d(field, record_rows, nodes);
  for (std::size_t c = 0; c < info_cols; ++c) {
    for (std::size_t l = 0; l < record_rows; ++l) {
      const std::uint32_t v = info[c * record_rows + l];
      if (!field.contains(v)) throw ParamError("info symbol out of field range");
      d(l, c) = v;
    }
  }
  // Row by row: u * P_info + v * P_tail = 0  =>  v = -(u * P_info) * P_tail^-1.
  std::vector<std::size_t> head(info_cols);
  for (std::size_t i = 0; i < info_cols; ++i) head[i] = i;
  const FieldMatrix info_block = parity.matrix().select_rows(head);
  for (std::size_t l = 0; l < record_rows; ++l) {
    std::vector<std::uint32_t> u(info_cols);
    for (std::size_t c = 0; c < info_cols; ++c) u[c] = d(l, c);
    const std::vector<std::uint32_t> w = info_block.transposed().mul_vector(u);
    std::vector<std::uint32_t> neg_w(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) neg_w[i] = field.neg(w[i]);
    const std::vector<std::uint32_t> v = block_inv->transposed().mul_vector(neg_w);
    for (std::size_t i = 0; i < s; ++i) d(l, info_cols + i) = v[i];
  }
  return RecordMatrix{std::move(d)};
}

std::vector<std::uint32_t> record_info(const RecordMatrix& record, std::size_t parity_cols) {
  const std::size_t rows = record.data.rows();
  const std::size_t info_cols = record.data.cols() - parity_cols;
  std::vector<std::uint32_t> info(info_cols * rows);
  for (std::size_t c = 0; c < info_cols; ++c) {
    for (std::size_t l = 0; l < rows; ++l) info[c * rows + l] = record.data(l, c);
  }
  return info;
}

std::vector<NodeContent> store_records(const std::vector<RecordMatrix>& records,
                                       const ParityCheck& parity) {
  const std::size_t nodes = parity.nodes();
  for (const RecordMatrix& r : records) {
    if (r.data.cols() != nodes || r.data.field() != parity.matrix().field()) {
      throw ParamError("record shape does not match parity check");
    }
    if (!r.satisfies(parity)) throw ParamError("record violates parity constraint");
  }
  std::vector<NodeContent> out(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    out[k].node = k + 1;
    for (const RecordMatrix& r : records) {
      for (std::size_t l = 0; l < r.data.rows(); ++l) out[k].symbols.push_back(r.data(l, k));
    }
  }
  return out;
}

Rational storage_cost(const SystemParams& params) {
  return Rational(1, static_cast<std::int64_t>(params.nodes - params.parity_cols));
}

}  // namespace pir
