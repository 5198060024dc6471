#ifndef PIR_STORAGE_HPP
#define PIR_STORAGE_HPP

#include <cstdint>
#include <vector>

#include "pir/matrix.hpp"
#include "pir/params.hpp"
#include "pir/rational.hpp"

namespace pir {

/* Full-rank K x S parity check matrix. A record d (L x K) is a valid
   codeword layout iff d * P = 0, one parity constraint per column of P. */
class ParityCheck {
 public:
  explicit ParityCheck(FieldMatrix matrix);  // throws ParamError unless rank == S

  const FieldMatrix& matrix() const { return matrix_; }
  std::size_t nodes() const { return matrix_.rows(); }        // K
  std::size_t parity_cols() const { return matrix_.cols(); }  // S
  std::uint32_t q() const { return matrix_.q(); }

  bool operator==(const ParityCheck& o) const { return matrix_ == o.matrix_; }

 private:
  FieldMatrix matrix_;
};

/* One data record laid out as an L x K matrix; column k is the piece stored
   at node k. Valid iff matrix * P = 0. */
struct RecordMatrix {
  FieldMatrix data;

  bool satisfies(const ParityCheck& parity) const { return (data * parity.matrix()).is_zero(); }
  bool operator==(const RecordMatrix& o) const { return data == o.data; }
};

/* Content stored at one node: the k-th columns of all records, concatenated
   record-major (record 1 rows 1..L, record 2 rows 1..L, ...). */
struct NodeContent {
  std::size_t node = 0;  // 1-based
  std::vector<std::uint32_t> symbols;

  bool operator==(const NodeContent& o) const = default;
};

// Vandermonde parity check p(k, s) = a_k^(s-1) over evaluation points
// a_k = k - 1. Any S rows form an invertible S x S matrix, which makes the
// induced (K, K-S) code maximum distance separable. Requires q >= K so the
// points are distinct.
ParityCheck make_mds_parity(std::size_t nodes, std::size_t parity_cols, std::uint32_t q);

// K x (K-1) parity check of uncoded (replicated) storage: column j is
// e_j - e_(j+1), so the all-ones row spans the left null space.
ParityCheck make_uncoded_parity(std::size_t nodes, std::uint32_t q);

// Systematic encoding. Information symbols fill columns 1..K-S column by
// column (L symbols per column); the trailing S parity columns are the
// unique completion with d * P = 0. Throws EncodingError when the parity-row
// block of P is singular at those positions.
RecordMatrix encode_record(const std::vector<std::uint32_t>& info, const ParityCheck& parity,
                           std::size_t record_rows);

// Reads the information symbols back out of a systematically encoded record.
std::vector<std::uint32_t> record_info(const RecordMatrix& record, std::size_t parity_cols);

// Splits records into per-node stored vectors. Every record must satisfy the
// parity constraint; the outputs then satisfy sum_k p(k,s) X_k = 0.
std::vector<NodeContent> store_records(const std::vector<RecordMatrix>& records,
                                       const ParityCheck& parity);

// Per-node stored symbols per information symbol: 1 / (K - S).
Rational storage_cost(const SystemParams& params);

}  // namespace pir

#endif  // PIR_STORAGE_HPP
