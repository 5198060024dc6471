#include "pir/collusion.hpp"

#include <algorithm>
#include <string>

#include "pir/errors.hpp"

namespace pir {

CollusionPattern::CollusionPattern(std::vector<Set> subsets, std::size_t nodes) {
  for (Set& s : subsets) {
    if (s.empty()) throw ParamError("collusion subset must be nonempty");
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (std::size_t k : s) {
      if (k < 1 || k > nodes) {
        throw ParamError("collusion subset index " + std::to_string(k) + " outside 1.." +
                         std::to_string(nodes));
      }
    }
  }
  std::sort(subsets.begin(), subsets.end());
  subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());
  // Keep only maximal subsets.
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < subsets.size() && !dominated; ++j) {
      if (i == j || subsets[j].size() < subsets[i].size()) continue;
      if (subsets[j] == subsets[i]) continue;
      dominated = std::includes(subsets[j].begin(), subsets[j].end(), subsets[i].begin(),
                                subsets[i].end());
    }
    if (!dominated) sets_.push_back(subsets[i]);
  }
}

CollusionPattern CollusionPattern::singletons(std::size_t nodes) {
  std::vector<Set> sets;
  sets.reserve(nodes);
  for (std::size_t k = 1; k <= nodes; ++k) sets.push_back({k});
  return CollusionPattern(std::move(sets), nodes);
}

}  // namespace pir
