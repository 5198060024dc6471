#ifndef PIR_COLLUSION_HPP
#define PIR_COLLUSION_HPP

#include <cstddef>
#include <vector>

namespace pir {

/* A family of node subsets that may pool their received queries. Canonical
   form: each subset sorted and deduplicated, subsets ordered
   lexicographically, and subsets contained in another member removed
   (privacy against a superset implies privacy against its subsets). */
class CollusionPattern {
 public:
  using Set = std::vector<std::size_t>;  // sorted 1-based node indices

  CollusionPattern() = default;
  // Canonicalizes; throws ParamError on an empty subset or an index outside 1..K.
  CollusionPattern(std::vector<Set> subsets, std::size_t nodes);

  static CollusionPattern singletons(std::size_t nodes);

  const std::vector<Set>& sets() const { return sets_; }
  bool empty() const { return sets_.empty(); }

  bool operator==(const CollusionPattern& o) const { return sets_ == o.sets_; }

 private:
  std::vector<Set> sets_;
};

}  // namespace pir

#endif  // PIR_COLLUSION_HPP
