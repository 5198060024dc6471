#ifndef PIR_ANALYSIS_HPP
#define PIR_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pir/collusion.hpp"
#include "pir/rational.hpp"
#include "pir/retrieval.hpp"
#include "pir/scheme.hpp"
#include "pir/storage.hpp"

namespace pir {

/* Outcome of the algebraic certification of one scheme. The two sufficient
   conditions (retrievable, private) are what "certified" means; the two
   necessary conditions are reported alongside as sanity gates. */
struct CertificationReport {
  bool retrievable = false;
  bool is_private = false;
  std::optional<CollusionPattern::Set> failing_alpha;  // set iff !is_private
  bool prop1_ok = false;
  std::optional<std::vector<std::size_t>> prop1_violating_beta;  // set iff !prop1_ok
  bool prop2_ok = false;

  bool certified() const { return retrievable && is_private; }
};

/* Exact storage/retrieval costs with the tradeoff lower bound on the
   retrieval cost. bound is absent when K*sc <= 1 (infeasible region). */
struct CostReport {
  Rational sc;
  Rational rc;
  std::optional<Rational> bound;
  bool tight = false;  // bound present and rc == bound
};

// Retrievability condition: the homogeneous decode system in the K*(T+L)
// unknowns has only the zero solution, i.e. the coefficient matrix has full
// column rank.
bool check_retrievability(const ParityCheck& parity, const RetrievalMatrix& v,
                          const SystemParams& params);

struct PrivacyResult {
  bool ok = true;
  std::optional<CollusionPattern::Set> failing_alpha;
};

// Privacy condition: for every collusion set alpha, the span of the columns
// (r, k in alpha) of V meets the selector subspace (vectors supported on the
// top L rows) only in 0. Checked as rank(G) == rank(G-) where G is the
// column block and G- its bottom T rows.
PrivacyResult check_privacy(const RetrievalMatrix& v, const CollusionPattern& phi,
                            const SystemParams& params);

struct Prop1Result {
  bool ok = true;
  std::optional<std::vector<std::size_t>> violating_beta;  // 1-based nodes
};

// Necessary counting condition for retrievability: for every subset beta of
// nodes, (T+L-R)*(K-|beta|) <= rank(P with beta's rows removed)*(T+L).
// Sweeps all subsets; refuses K > 20 (use the explicit-list overload).
Prop1Result check_prop1(const ParityCheck& parity, const SystemParams& params);
Prop1Result check_prop1(const ParityCheck& parity, const SystemParams& params,
                        const std::vector<std::vector<std::size_t>>& betas);

// Necessary condition for privacy: R <= T.
bool check_prop2(const SystemParams& params);

// Tradeoff lower bound sc / (K*sc - 1); absent when K*sc <= 1.
std::optional<Rational> tradeoff_bound(const Rational& sc, std::size_t nodes);

CertificationReport certify(const Scheme& scheme);
CostReport cost_report(const SystemParams& params);

}  // namespace pir

#endif  // PIR_ANALYSIS_HPP
