#include "pir/oracles.hpp"

#include <map>
#include <vector>

#include "pir/errors.hpp"
#include "pir/matrix.hpp"
#include "pir/retrieval.hpp"

namespace pir {
namespace {

std::uint64_t pow_saturating(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (acc > kEnumerationSaturated / base) return kEnumerationSaturated;
    acc *= base;
    if (acc >= kEnumerationSaturated) return kEnumerationSaturated;
  }
  return acc;
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = rng.next();
  while (x >= limit) x = rng.next();
  return x % bound;
}

void append_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v >> 24));
  out.push_back(static_cast<char>(v >> 16));
  out.push_back(static_cast<char>(v >> 8));
  out.push_back(static_cast<char>(v));
}

// Base-q digits of `index`, least significant first.
std::vector<std::uint32_t> digits(std::uint64_t index, std::uint32_t q, std::size_t count) {
  std::vector<std::uint32_t> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = static_cast<std::uint32_t>(index % q);
    index /= q;
  }
  return out;
}

class LinearOracle final : public EnumerableScheme {
 public:
  explicit LinearOracle(Scheme scheme)
      : scheme_(std::move(scheme)),
        field_(scheme_.params.validate()),
        record_basis_(scheme_.parity.matrix().transposed().null_space()) {
    scheme_.check_shapes();
  }

  std::size_t node_count() const override { return scheme_.params.nodes; }
  std::size_t record_count() const override { return scheme_.params.records; }

  std::uint64_t randomness_count(std::size_t) const override {
    const SystemParams& p = scheme_.params;
    return pow_saturating(p.q, p.node_vector_len() * p.mask_cols);
  }

  std::string node_view(std::size_t m, std::uint64_t real, std::size_t k) const override {
    const SystemParams& p = scheme_.params;
    const FieldMatrix mask = mask_from(real);
    std::string out;
    for (std::size_t r = 1; r <= p.node_queries; ++r) {
      for (std::size_t row = 0; row < p.node_vector_len(); ++row) {
        std::uint32_t acc = 0;
        for (std::size_t t = 1; t <= p.mask_cols; ++t) {
          acc = field_.add(acc, field_.mul(scheme_.retrieval.mask(t, r, k), mask(row, t - 1)));
        }
        const std::size_t base = p.record_rows * (m - 1);
        if (row >= base && row < base + p.record_rows) {
          acc = field_.add(acc, scheme_.retrieval.selector(row - base + 1, r, k));
        }
        append_u32(out, acc);
      }
    }
    return out;
  }

  std::uint64_t record_space() const override {
    const SystemParams& p = scheme_.params;
    return pow_saturating(p.q, p.records * p.record_rows * record_basis_.cols());
  }

  bool run_ok(std::uint64_t rec, std::size_t m, std::uint64_t real) const override {
    const SystemParams& p = scheme_.params;
    const std::vector<RecordMatrix> records = records_from(rec);
    const std::vector<NodeContent> contents = store_records(records, scheme_.parity);
    const FieldMatrix mask = mask_from(real);
    const std::vector<QueryBundle> queries = queries_with_mask(scheme_.retrieval, m, p, mask);
    std::vector<AnswerBundle> answers;
    answers.reserve(p.nodes);
    for (std::size_t k = 0; k < p.nodes; ++k) {
      answers.push_back(respond(contents[k], queries[k], field_));
    }
    try {
      const RecordMatrix decoded = decode(scheme_.retrieval, scheme_.parity, answers, m, p);
      return decoded == records[m - 1];
    } catch (const DecodeError&) {
      return false;
    }
  }

 private:
  FieldMatrix mask_from(std::uint64_t real) const {
    const SystemParams& p = scheme_.params;
    const std::vector<std::uint32_t> d =
        digits(real, p.q, p.node_vector_len() * p.mask_cols);
    FieldMatrix mask(field_, p.node_vector_len(), p.mask_cols);
    std::size_t i = 0;
    for (std::size_t row = 0; row < mask.rows(); ++row) {
      for (std::size_t col = 0; col < mask.cols(); ++col, ++i) mask(row, col) = d[i];
    }
    return mask;
  }

  std::vector<RecordMatrix> records_from(std::uint64_t rec) const {
    const SystemParams& p = scheme_.params;
    const std::size_t free_per_row = record_basis_.cols();
    const std::vector<std::uint32_t> d =
        digits(rec, p.q, p.records * p.record_rows * free_per_row);
    std::vector<RecordMatrix> records;
    records.reserve(p.records);
    std::size_t i = 0;
    for (std::size_t n = 0; n < p.records; ++n) {
      FieldMatrix record(field_, p.record_rows, p.nodes);
      for (std::size_t l = 0; l < p.record_rows; ++l) {
        std::vector<std::uint32_t> coeff(free_per_row);
        for (std::size_t c = 0; c < free_per_row; ++c, ++i) coeff[c] = d[i];
        record.set_row(l, record_basis_.mul_vector(coeff));
      }
      records.push_back(RecordMatrix{std::move(record)});
    }
    return records;
  }

  Scheme scheme_;
  PrimeField field_;
  FieldMatrix record_basis_;  // K x (K-S), columns span valid record rows
};

std::uint64_t check_randomness_budget(const EnumerableScheme& scheme,
                                      const OracleBudget& budget) {
  std::uint64_t total = 0;
  for (std::size_t m = 1; m <= scheme.record_count(); ++m) {
    const std::uint64_t c = scheme.randomness_count(m);
    if (c >= kEnumerationSaturated || total + c < total) {
      throw BudgetError("randomness space too large to enumerate");
    }
    total += c;
  }
  if (total > budget.randomness) {
    throw BudgetError("enumeration needs " + std::to_string(total) +
                      " realizations, budget is " + std::to_string(budget.randomness));
  }
  return total;
}

}  // namespace

bool brute_privacy(const EnumerableScheme& scheme, const CollusionPattern& phi,
                   const OracleBudget& budget) {
  check_randomness_budget(scheme, budget);
  const std::size_t n = scheme.record_count();
  for (const CollusionPattern::Set& alpha : phi.sets()) {
    std::vector<std::map<std::string, std::uint64_t>> hist(n);
    std::vector<std::uint64_t> totals(n);
    for (std::size_t m = 1; m <= n; ++m) {
      totals[m - 1] = scheme.randomness_count(m);
      for (std::uint64_t real = 0; real < totals[m - 1]; ++real) {
        std::string view;
        for (std::size_t k : alpha) {
          const std::string part = scheme.node_view(m, real, k);
          append_u32(view, static_cast<std::uint32_t>(part.size()));
          view += part;
        }
        ++hist[m - 1][view];
      }
    }
    // Identical conditional distributions across every m; counts are
    // compared cross-multiplied so differing totals still compare exactly.
    for (std::size_t m = 1; m < n; ++m) {
      if (hist[m].size() != hist[0].size()) return false;
      for (const auto& [view, count] : hist[0]) {
        const auto it = hist[m].find(view);
        if (it == hist[m].end()) return false;
        if (count * totals[m] != it->second * totals[0]) return false;
      }
    }
  }
  return true;
}

bool brute_errorfree(const EnumerableScheme& scheme, Rng& rng, const OracleBudget& budget) {
  check_randomness_budget(scheme, budget);
  const std::uint64_t space = scheme.record_space();
  std::vector<std::uint64_t> record_indices;
  if (space <= budget.record_enumeration) {
    record_indices.resize(space);
    for (std::uint64_t i = 0; i < space; ++i) record_indices[i] = i;
  } else if (space < kEnumerationSaturated) {
    record_indices.resize(budget.record_samples);
    for (std::uint64_t& i : record_indices) i = uniform_below(rng, space);
  } else {
    throw BudgetError("record space too large to enumerate or sample by index");
  }
  for (const std::uint64_t rec : record_indices) {
    for (std::size_t m = 1; m <= scheme.record_count(); ++m) {
      const std::uint64_t reals = scheme.randomness_count(m);
      for (std::uint64_t real = 0; real < reals; ++real) {
        if (!scheme.run_ok(rec, m, real)) return false;
      }
    }
  }
  return true;
}

std::unique_ptr<EnumerableScheme> linear_scheme_oracle(const Scheme& scheme) {
  return std::make_unique<LinearOracle>(scheme);
}

}  // namespace pir
