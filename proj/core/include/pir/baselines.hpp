#ifndef PIR_BASELINES_HPP
#define PIR_BASELINES_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "pir/analysis.hpp"
#include "pir/oracles.hpp"
#include "pir/rng.hpp"

namespace pir {

/* Secret-sharing PIR over replicated storage: every node holds all N
   records, the selector vector is additively shared across the nodes, and
   the record is rebuilt as sum_k c_k * A_k. */
struct SharingScheme {
  std::uint32_t q = 2;
  std::size_t nodes = 2;
  std::size_t records = 1;
  std::vector<std::uint32_t> coefficients;  // c_1..c_K, all nonzero

  void validate() const;
};

// Additive instantiation: c_k = 1 for every node.
SharingScheme make_additive_sharing(std::uint32_t q, std::size_t nodes, std::size_t records);

struct SharingTranscript {
  std::size_t requested = 0;
  std::vector<std::vector<std::uint32_t>> queries;  // K shares, each length N
  std::vector<std::uint32_t> answers;               // K
  std::uint32_t decoded = 0;
};

// One retrieval run: shares Q_1..Q_{K-1} are uniform, Q_K completes the
// reconstruction identity sum_k c_k Q_k = e_m, answers are inner products
// with the record vector, and the decode is sum_k c_k A_k.
SharingTranscript sharing_retrieve(const SharingScheme& scheme,
                                   const std::vector<std::uint32_t>& records, std::size_t m,
                                   Rng& rng);

// Oracle adapter enumerating the K-1 free shares.
std::unique_ptr<EnumerableScheme> sharing_oracle(const SharingScheme& scheme);

/* Fixed 3-node, 2-record, 2-bits-per-record scheme over GF(2). Nodes store
   (a1,b1), (a2,b2) and (a1^a2, b1^b2); queries are ternary symbols mapped
   through a fixed response table; the query triple is drawn uniformly from
   one of two 3-triple supports depending on the requested record. */
class Example2Scheme {
 public:
  static constexpr std::size_t kNodes = 3;
  static constexpr std::size_t kRecords = 2;
  static constexpr std::size_t kTriplesPerRecord = 3;

  Example2Scheme();

  // The three equally likely query triples given M = m (1-based).
  const std::array<std::array<std::uint8_t, kNodes>, kTriplesPerRecord>& triples(
      std::size_t m) const;

  // Stored bit pair of node k for record bits (a1, b1, a2, b2).
  std::array<std::uint32_t, 2> node_content(std::size_t k,
                                            const std::array<std::uint32_t, 4>& bits) const;

  // Response of node k to query symbol in {1,2,3}.
  std::uint32_t answer(std::size_t k, std::uint8_t query,
                       const std::array<std::uint32_t, 4>& bits) const;

  struct RunResult {
    std::size_t requested = 0;
    std::array<std::uint8_t, kNodes> queries{};
    std::array<std::uint32_t, kNodes> answers{};
    std::pair<std::uint32_t, std::uint32_t> decoded;  // (a_m, b_m)
  };

  RunResult run(const std::array<std::uint32_t, 4>& bits, std::size_t m, Rng& rng) const;
  RunResult run_with_triple(const std::array<std::uint32_t, 4>& bits, std::size_t m,
                            std::size_t triple_index) const;

  // (1/2, 1/2): two stored bits per node over four record bits; one answer
  // bit per node over two record bits.
  CostReport costs() const;

  std::unique_ptr<EnumerableScheme> oracle() const;

 private:
  // Answer of (node k, query symbol) as a linear functional over
  // (a1, b1, a2, b2).
  std::array<std::uint32_t, 4> functional(std::size_t k, std::uint8_t query) const;

  // Stored-slot functionals: slots_[k-1][slot] over (a1, b1, a2, b2).
  std::array<std::array<std::array<std::uint32_t, 4>, 2>, kNodes> slots_;
  std::array<std::array<std::array<std::uint8_t, kNodes>, kTriplesPerRecord>, kRecords>
      triples_;
};

}  // namespace pir

#endif  // PIR_BASELINES_HPP
