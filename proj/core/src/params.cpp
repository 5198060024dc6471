#include "pir/params.hpp"

#include "pir/errors.hpp"

namespace pir {

PrimeField SystemParams::validate() const {
  if (nodes < 2) throw ParamError("need at least 2 storage nodes");
  if (parity_cols < 1 || parity_cols >= nodes) {
    throw ParamError("parity column count must satisfy 1 <= S < K");
  }
  if (records < 1 || record_rows < 1 || mask_cols < 1 || node_queries < 1) {
    throw ParamError("all counts must be at least 1");
  }
  try {
    return PrimeField(q);
  } catch (const FieldError& e) {
    throw ParamError(e.what());
  }
}

SystemParams SystemParams::square(std::uint32_t q, std::size_t nodes, std::size_t parity_cols,
                                  std::size_t records) {
  SystemParams p;
  p.q = q;
  p.nodes = nodes;
  p.parity_cols = parity_cols;
  p.records = records;
  p.record_rows = parity_cols;
  p.mask_cols = nodes - parity_cols;
  p.node_queries = nodes - parity_cols;
  p.validate();
  return p;
}

}  // namespace pir
