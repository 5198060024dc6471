#ifndef PIR_RETRIEVAL_HPP
#define PIR_RETRIEVAL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pir/matrix.hpp"
#include "pir/params.hpp"
#include "pir/rational.hpp"
#include "pir/rng.hpp"
#include "pir/storage.hpp"

namespace pir {

/* The (T+L) x RK matrix defining a linear retrieval scheme. Column (r, k)
   sits at offset (k-1)*R + (r-1). The top L rows are selector coefficients
   (they multiply the standard-basis columns that pick record symbols); the
   bottom T rows are mask coefficients (they multiply the random mask
   columns). */
class RetrievalMatrix {
 public:
  RetrievalMatrix(FieldMatrix matrix, std::size_t selector_rows, std::size_t node_queries);

  const FieldMatrix& matrix() const { return matrix_; }
  std::uint32_t q() const { return matrix_.q(); }

  std::size_t selector_rows() const { return selector_rows_; }              // L
  std::size_t mask_rows() const { return matrix_.rows() - selector_rows_; }  // T
  std::size_t node_queries() const { return node_queries_; }                 // R
  std::size_t nodes() const { return matrix_.cols() / node_queries_; }       // K

  std::size_t column_index(std::size_t r, std::size_t k) const {  // 1-based r, k
    return (k - 1) * node_queries_ + (r - 1);
  }
  // selector(l, r, k) = v*_{l,r,k}; mask(t, r, k) = v_{t,r,k}; all 1-based.
  std::uint32_t selector(std::size_t l, std::size_t r, std::size_t k) const {
    return matrix_(l - 1, column_index(r, k));
  }
  std::uint32_t mask(std::size_t t, std::size_t r, std::size_t k) const {
    return matrix_(selector_rows_ + t - 1, column_index(r, k));
  }

  bool operator==(const RetrievalMatrix& o) const {
    return matrix_ == o.matrix_ && selector_rows_ == o.selector_rows_ &&
           node_queries_ == o.node_queries_;
  }

 private:
  FieldMatrix matrix_;
  std::size_t selector_rows_;
  std::size_t node_queries_;
};

/* The R query vectors (each of length L*N) sent to one node. */
struct QueryBundle {
  std::size_t node = 0;  // 1-based
  std::vector<std::vector<std::uint32_t>> queries;

  bool operator==(const QueryBundle& o) const = default;
};

/* The R response symbols returned by one node. */
struct AnswerBundle {
  std::size_t node = 0;  // 1-based
  std::vector<std::uint32_t> values;

  bool operator==(const AnswerBundle& o) const = default;
};

/* One full protocol run. */
struct Transcript {
  std::size_t requested = 0;            // M, 1-based
  FieldMatrix mask;                     // U, (L*N) x T
  std::vector<QueryBundle> queries;     // per node
  std::vector<AnswerBundle> answers;    // per node
  std::optional<RecordMatrix> decoded;  // L x K

  bool operator==(const Transcript& o) const = default;
};

// Cyclic 0/1 retrieval matrix for the square parameters L = S, T = R = K-S:
// the entry in (combined) row i of column (r, k) is 1 iff k - i - r = 0
// (mod K). Every column has weight exactly 1. With an MDS parity check this
// matrix always satisfies the retrievability condition; it generally fails
// the privacy condition.
RetrievalMatrix cyclic_v(std::size_t nodes, std::size_t parity_cols, std::uint32_t q);

// Retrieval matrix with all (T+L) * RK entries drawn independently and
// uniformly (row-major draw order; deterministic given the seed).
RetrievalMatrix random_v(const SystemParams& params, Rng& rng);

// Fresh uniform (L*N) x T mask.
FieldMatrix random_mask(const SystemParams& params, Rng& rng);

// Query vectors for all nodes with an explicit mask:
//   Q_{r,k} = sum_t v_{t,r,k} U_t + sum_l v*_{l,r,k} E_{m,l},
// where E_{m,l} is the standard basis column with 1 at row L*(m-1) + l.
std::vector<QueryBundle> queries_with_mask(const RetrievalMatrix& v, std::size_t m,
                                           const SystemParams& params, const FieldMatrix& mask);

// Draws a fresh mask and builds the query bundles. Throws ParamError when m
// is out of 1..N.
std::pair<FieldMatrix, std::vector<QueryBundle>> gen_queries(const RetrievalMatrix& v,
                                                             std::size_t m,
                                                             const SystemParams& params,
                                                             Rng& rng);

// The R inner products Q_{r,k}^T X_k one node computes.
AnswerBundle respond(const NodeContent& content, const QueryBundle& bundle,
                     const PrimeField& field);

// Coefficient matrix of the decode system. Unknown ordering per node k:
// first the L record unknowns, then the T mask-product unknowns. Row order:
// T*S mask parity equations, L*S record parity equations, then K*R answer
// equations.
FieldMatrix decode_system(const RetrievalMatrix& v, const ParityCheck& parity,
                          const SystemParams& params);

// Solves the decode system against the received answers and returns the
// requested record. Throws DecodeError when the system is underdetermined or
// inconsistent.
RecordMatrix decode(const RetrievalMatrix& v, const ParityCheck& parity,
                    const std::vector<AnswerBundle>& answers, std::size_t m,
                    const SystemParams& params);

// Downloaded symbols per node per record information symbol: R / (L*(K-S)).
Rational retrieval_cost(const SystemParams& params);

}  // namespace pir

#endif  // PIR_RETRIEVAL_HPP
