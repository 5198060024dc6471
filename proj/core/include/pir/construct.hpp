#ifndef PIR_CONSTRUCT_HPP
#define PIR_CONSTRUCT_HPP

#include <cstdint>

#include "pir/analysis.hpp"
#include "pir/scheme.hpp"

namespace pir {

enum class CodeKind { mds, uncoded };
enum class VKind { random, cyclic };

/* Construction request for a square-parameter scheme (L = S, T = R = K-S;
   for the uncoded parity check S is forced to K-1). */
struct ConstructOptions {
  std::uint32_t q = 65537;
  std::size_t nodes = 3;
  std::size_t parity_cols = 1;
  std::size_t records = 2;
  CodeKind code = CodeKind::mds;
  VKind v = VKind::random;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 5;
};

struct ConstructResult {
  Scheme scheme;
  CertificationReport report;
  std::uint64_t seed_used = 0;
  std::size_t attempts = 0;
};

// Builds the parity check, then the retrieval matrix. With VKind::random,
// seeds seed, seed+1, ... are tried until certification passes, up to
// max_attempts (ConstructError afterwards; a budget that small failing
// usually means q is too small). The cyclic matrix is deterministic and is
// returned with whatever its certification says.
ConstructResult construct_scheme(const ConstructOptions& options);

}  // namespace pir

#endif  // PIR_CONSTRUCT_HPP
