#ifndef PIR_ORACLES_HPP
#define PIR_ORACLES_HPP

#include <cstdint>
#include <memory>
#include <string>

#include "pir/collusion.hpp"
#include "pir/rng.hpp"
#include "pir/scheme.hpp"

namespace pir {

/* A retrieval scheme whose private randomness is exactly enumerable: for a
   requested index m, realization indices 0..randomness_count(m)-1 walk
   through equally likely draws. This is what the brute-force definitional
   checkers run against; any query-generating scheme (not just the linear
   family) can implement it. */
class EnumerableScheme {
 public:
  virtual ~EnumerableScheme() = default;

  virtual std::size_t node_count() const = 0;
  virtual std::size_t record_count() const = 0;

  // Number of equally likely randomness realizations given M = m (1-based).
  virtual std::uint64_t randomness_count(std::size_t m) const = 0;

  // Stable byte encoding of everything node k receives under realization
  // `real` when M = m. Equal bytes <=> equal observations.
  virtual std::string node_view(std::size_t m, std::uint64_t real, std::size_t k) const = 0;

  // Number of enumerable record-set realizations, saturated at 2^62 when the
  // space is too large to index.
  virtual std::uint64_t record_space() const = 0;

  // Runs the full protocol on record set `rec` with randomness `real` and
  // requested index m; true iff the decoder returns exactly the stored
  // record (decode failures count as false).
  virtual bool run_ok(std::uint64_t rec, std::size_t m, std::uint64_t real) const = 0;
};

inline constexpr std::uint64_t kEnumerationSaturated = std::uint64_t(1) << 62;

/* Budgets for the brute-force sweeps. The randomness budget bounds
   randomness_count(m) * N; the record budget switches error-freeness from
   exhaustive record enumeration to sampling, and sampling is refused when
   the record space cannot even be indexed. */
struct OracleBudget {
  std::uint64_t randomness = std::uint64_t(1) << 24;
  std::uint64_t record_enumeration = 4096;
  std::size_t record_samples = 64;
};

// Definitional privacy check: enumerates every randomness realization for
// every m, builds the exact conditional distribution of the views of the
// colluding nodes, and returns true iff the distributions are identical
// across all m for every subset in phi. Throws BudgetError (naming the
// required size) when enumeration exceeds the budget.
bool brute_privacy(const EnumerableScheme& scheme, const CollusionPattern& phi,
                   const OracleBudget& budget = {});

// Definitional error-freeness check: true iff every enumerated
// (records, randomness, m) run decodes to exactly the stored record. Record
// sets are enumerated exhaustively when the space fits the budget and
// sampled through `rng` otherwise.
bool brute_errorfree(const EnumerableScheme& scheme, Rng& rng, const OracleBudget& budget = {});

// Adapter running the linear scheme family through the oracles. Valid
// records are enumerated directly from the parity null space, so the scheme
// does not need systematic-encoding positions.
std::unique_ptr<EnumerableScheme> linear_scheme_oracle(const Scheme& scheme);

}  // namespace pir

#endif  // PIR_ORACLES_HPP
