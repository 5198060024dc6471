#include "pir/construct.hpp"

#include <string>

#include "pir/errors.hpp"
#include "pir/retrieval.hpp"
#include "pir/rng.hpp"

namespace pir {

ConstructResult construct_scheme(const ConstructOptions& options) {
  const std::size_t parity_cols =
      options.code == CodeKind::uncoded ? options.nodes - 1 : options.parity_cols;
  const SystemParams params =
      SystemParams::square(options.q, options.nodes, parity_cols, options.records);
  ParityCheck parity = options.code == CodeKind::uncoded
                           ? make_uncoded_parity(options.nodes, options.q)
                           : make_mds_parity(options.nodes, parity_cols, options.q);
  CollusionPattern phi = CollusionPattern::singletons(options.nodes);

  if (options.v == VKind::cyclic) {
    Scheme scheme{params, std::move(parity), cyclic_v(options.nodes, parity_cols, options.q),
                  std::move(phi), std::nullopt};
    CertificationReport report = certify(scheme);
    return {std::move(scheme), std::move(report), 0, 1};
  }

  for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    const std::uint64_t seed = options.seed + attempt;
    Rng rng(seed);
    Scheme scheme{params, parity, random_v(params, rng), phi, seed};
    CertificationReport report = certify(scheme);
    if (report.certified()) {
      return {std::move(scheme), std::move(report), seed, attempt + 1};
    }
  }
  throw ConstructError("no certified scheme in " + std::to_string(options.max_attempts) +
                       " seed attempts; q=" + std::to_string(options.q) +
                       " may be too small");
}

}  // namespace pir
