#include "pir/scheme.hpp"

#include "pir/errors.hpp"

namespace pir {

void Scheme::check_shapes() const {
  params.validate();
  if (parity.q() != params.q || retrieval.q() != params.q) {
    throw ParamError("scheme matrices use a different modulus than the parameters");
  }
  if (parity.nodes() != params.nodes || parity.parity_cols() != params.parity_cols) {
    throw ParamError("parity check shape does not match parameters");
  }
  if (retrieval.selector_rows() != params.record_rows ||
      retrieval.mask_rows() != params.mask_cols ||
      retrieval.node_queries() != params.node_queries ||
      retrieval.nodes() != params.nodes) {
    throw ParamError("retrieval matrix shape does not match parameters");
  }
  for (const CollusionPattern::Set& alpha : phi.sets()) {
    for (std::size_t k : alpha) {
      if (k < 1 || k > params.nodes) throw ParamError("collusion pattern references unknown node");
    }
  }
}

}  // namespace pir
