#ifndef PIR_PARAMS_HPP
#define PIR_PARAMS_HPP

#include <cstddef>
#include <cstdint>

#include "pir/field.hpp"

namespace pir {

/* Scalar parameters of a coded-storage retrieval scheme.
 *
 *   q            prime field modulus
 *   records      number of stored data records (N)
 *   nodes        number of storage nodes (K)
 *   parity_cols  columns of the parity check matrix (S), 1 <= S < K
 *   record_rows  rows per record matrix (L); a record is L x K
 *   mask_cols    columns of the random mask (T)
 *   node_queries query vectors sent to each node (R)
 */
struct SystemParams {
  std::uint32_t q = 2;
  std::size_t records = 1;
  std::size_t nodes = 2;
  std::size_t parity_cols = 1;
  std::size_t record_rows = 1;
  std::size_t mask_cols = 1;
  std::size_t node_queries = 1;

  // Throws ParamError on any violated constraint; returns the field context.
  PrimeField validate() const;

  std::size_t info_cols() const { return nodes - parity_cols; }         // K - S
  std::size_t info_symbols() const { return info_cols() * record_rows; }  // per record
  std::size_t node_vector_len() const { return record_rows * records; }   // L*N
  std::size_t retrieval_rows() const { return mask_cols + record_rows; }  // T + L
  std::size_t retrieval_cols() const { return node_queries * nodes; }     // R*K

  bool operator==(const SystemParams& o) const = default;

  // Parameters used by the square construction: L = S, T = R = K - S.
  static SystemParams square(std::uint32_t q, std::size_t nodes, std::size_t parity_cols,
                             std::size_t records);
};

}  // namespace pir

#endif  // PIR_PARAMS_HPP
