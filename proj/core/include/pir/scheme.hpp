#ifndef PIR_SCHEME_HPP
#define PIR_SCHEME_HPP

#include <cstdint>
#include <optional>

#include "pir/collusion.hpp"
#include "pir/params.hpp"
#include "pir/retrieval.hpp"
#include "pir/storage.hpp"

namespace pir {

/* A bound storage/retrieval pair: the unit of certification, serialization
   and simulation. */
struct Scheme {
  SystemParams params;
  ParityCheck parity;
  RetrievalMatrix retrieval;
  CollusionPattern phi;
  std::optional<std::uint64_t> seed;

  // Throws ParamError when the matrices disagree with the parameters.
  void check_shapes() const;

  bool operator==(const Scheme& o) const {
    return params == o.params && parity == o.parity && retrieval == o.retrieval &&
           phi == o.phi && seed == o.seed;
  }
};

}  // namespace pir

#endif  // PIR_SCHEME_HPP
