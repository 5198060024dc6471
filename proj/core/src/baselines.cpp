#include "pir/baselines.hpp"

#include <string>

#include "pir/errors.hpp"
#include "pir/field.hpp"
#include "pir/matrix.hpp"

namespace pir {
namespace {

void append_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v >> 24));
  out.push_back(static_cast<char>(v >> 16));
  out.push_back(static_cast<char>(v >> 8));
  out.push_back(static_cast<char>(v));
}

std::vector<std::uint32_t> digits(std::uint64_t index, std::uint32_t q, std::size_t count) {
  std::vector<std::uint32_t> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = static_cast<std::uint32_t>(index % q);
    index /= q;
  }
  return out;
}

std::uint64_t pow_saturating(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (acc > kEnumerationSaturated / base) return kEnumerationSaturated;
    acc *= base;
    if (acc >= kEnumerationSaturated) return kEnumerationSaturated;
  }
  return acc;
}

}  // namespace

void SharingScheme::validate() const {
  PrimeField field(q);
  if (nodes < 2) throw ParamError("sharing scheme needs K >= 2");
  if (records < 1) throw ParamError("sharing scheme needs N >= 1");
  if (coefficients.size() != nodes) throw ParamError("need one coefficient per node");
  for (std::uint32_t c : coefficients) {
    if (c == 0 || !field.contains(c)) throw ParamError("coefficients must be nonzero residues");
  }
}

SharingScheme make_additive_sharing(std::uint32_t q, std::size_t nodes, std::size_t records) {
  SharingScheme s;
  s.q = q;
  s.nodes = nodes;
  s.records = records;
  s.coefficients.assign(nodes, 1);
  s.validate();
  return s;
}

namespace {

// Shares given the first K-1 free draws: the last share completes
// sum_k c_k Q_k = e_m.
std::vector<std::vector<std::uint32_t>> sharing_queries(
    const SharingScheme& scheme, std::size_t m,
    const std::vector<std::vector<std::uint32_t>>& free_shares) {
  const PrimeField field(scheme.q);
  std::vector<std::vector<std::uint32_t>> queries = free_shares;
  std::vector<std::uint32_t> last(scheme.records, 0);
  last[m - 1] = 1;
  for (std::size_t k = 0; k + 1 < scheme.nodes; ++k) {
    for (std::size_t n = 0; n < scheme.records; ++n) {
      last[n] = field.sub(last[n], field.mul(scheme.coefficients[k], queries[k][n]));
    }
  }
  const std::uint32_t inv_last = field.inv(scheme.coefficients[scheme.nodes - 1]);
  for (std::uint32_t& v : last) v = field.mul(v, inv_last);
  queries.push_back(std::move(last));
  return queries;
}

class SharingOracle final : public EnumerableScheme {
 public:
  explicit SharingOracle(SharingScheme scheme) : scheme_(std::move(scheme)) {
    scheme_.validate();
  }

  std::size_t node_count() const override { return scheme_.nodes; }
  std::size_t record_count() const override { return scheme_.records; }

  std::uint64_t randomness_count(std::size_t) const override {
    return pow_saturating(scheme_.q, (scheme_.nodes - 1) * scheme_.records);
  }

  std::string node_view(std::size_t m, std::uint64_t real, std::size_t k) const override {
    const auto queries = sharing_queries(scheme_, m, free_shares(real));
    std::string out;
    for (std::uint32_t v : queries[k - 1]) append_u32(out, v);
    return out;
  }

  std::uint64_t record_space() const override {
    return pow_saturating(scheme_.q, scheme_.records);
  }

  bool run_ok(std::uint64_t rec, std::size_t m, std::uint64_t real) const override {
    const PrimeField field(scheme_.q);
    const std::vector<std::uint32_t> records = digits(rec, scheme_.q, scheme_.records);
    const auto queries = sharing_queries(scheme_, m, free_shares(real));
    std::uint32_t decoded = 0;
    for (std::size_t k = 0; k < scheme_.nodes; ++k) {
      std::uint32_t answer = 0;
      for (std::size_t n = 0; n < scheme_.records; ++n) {
        answer = field.add(answer, field.mul(records[n], queries[k][n]));
      }
      decoded = field.add(decoded, field.mul(scheme_.coefficients[k], answer));
    }
    return decoded == records[m - 1];
  }

 private:
  std::vector<std::vector<std::uint32_t>> free_shares(std::uint64_t real) const {
    const std::vector<std::uint32_t> d =
        digits(real, scheme_.q, (scheme_.nodes - 1) * scheme_.records);
    std::vector<std::vector<std::uint32_t>> shares(scheme_.nodes - 1);
    std::size_t i = 0;
    for (auto& share : shares) {
      share.resize(scheme_.records);
      for (std::size_t n = 0; n < scheme_.records; ++n, ++i) share[n] = d[i];
    }
    return shares;
  }

  SharingScheme scheme_;
};

}  // namespace

SharingTranscript sharing_retrieve(const SharingScheme& scheme,
                                   const std::vector<std::uint32_t>& records, std::size_t m,
                                   Rng& rng) {
  scheme.validate();
  const PrimeField field(scheme.q);
  if (records.size() != scheme.records) throw ParamError("record count mismatch");
  if (m < 1 || m > scheme.records) {
    throw ParamError("record index " + std::to_string(m) + " out of 1.." +
                     std::to_string(scheme.records));
  }
  std::vector<std::vector<std::uint32_t>> free_shares(scheme.nodes - 1);
  for (auto& share : free_shares) {
    share.resize(scheme.records);
    for (std::uint32_t& v : share) v = field.uniform(rng);
  }
  SharingTranscript t;
  t.requested = m;
  t.queries = sharing_queries(scheme, m, free_shares);
  t.answers.resize(scheme.nodes);
  t.decoded = 0;
  for (std::size_t k = 0; k < scheme.nodes; ++k) {
    std::uint32_t answer = 0;
    for (std::size_t n = 0; n < scheme.records; ++n) {
      answer = field.add(answer, field.mul(records[n], t.queries[k][n]));
    }
    t.answers[k] = answer;
    t.decoded = field.add(t.decoded, field.mul(scheme.coefficients[k], answer));
  }
  return t;
}

std::unique_ptr<EnumerableScheme> sharing_oracle(const SharingScheme& scheme) {
  return std::make_unique<SharingOracle>(scheme);
}

Example2Scheme::Example2Scheme() {
  // Node 1 stores (a1, b1), node 2 stores (a2, b2), node 3 stores
  // (a1^a2, b1^b2). The response table rows b1^b2 and a1^a2^b1^b2 for node 3
  // force this content over the (a1^a2, a2^b2) variant.
  slots_[0] = {{{{1, 0, 0, 0}}, {{0, 1, 0, 0}}}};
  slots_[1] = {{{{0, 0, 1, 0}}, {{0, 0, 0, 1}}}};
  slots_[2] = {{{{1, 0, 1, 0}}, {{0, 1, 0, 1}}}};
  triples_[0] = {{{{1, 3, 3}}, {{2, 1, 1}}, {{3, 2, 2}}}};
  triples_[1] = {{{{3, 1, 3}}, {{1, 2, 1}}, {{2, 3, 2}}}};
}

const std::array<std::array<std::uint8_t, Example2Scheme::kNodes>,
                 Example2Scheme::kTriplesPerRecord>&
Example2Scheme::triples(std::size_t m) const {
  if (m < 1 || m > kRecords) throw ParamError("record index out of range");
  return triples_[m - 1];
}

std::array<std::uint32_t, 4> Example2Scheme::functional(std::size_t k,
                                                        std::uint8_t query) const {
  const auto& pair = slots_[k - 1];
  std::array<std::uint32_t, 4> f{};
  switch (query) {
    case 1:
      f = pair[0];
      break;
    case 2:
      f = pair[1];
      break;
    case 3:
      for (std::size_t i = 0; i < 4; ++i) f[i] = pair[0][i] ^ pair[1][i];
      break;
    default:
      throw ParamError("query symbol must be 1, 2 or 3");
  }
  return f;
}

std::array<std::uint32_t, 2> Example2Scheme::node_content(
    std::size_t k, const std::array<std::uint32_t, 4>& bits) const {
  const auto& pair = slots_[k - 1];
  std::array<std::uint32_t, 2> out{};
  for (std::size_t slot = 0; slot < 2; ++slot) {
    std::uint32_t acc = 0;
    for (std::size_t i = 0; i < 4; ++i) acc ^= pair[slot][i] & bits[i];
    out[slot] = acc;
  }
  return out;
}

std::uint32_t Example2Scheme::answer(std::size_t k, std::uint8_t query,
                                     const std::array<std::uint32_t, 4>& bits) const {
  const std::array<std::uint32_t, 4> f = functional(k, query);
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < 4; ++i) acc ^= f[i] & bits[i];
  return acc;
}

Example2Scheme::RunResult Example2Scheme::run_with_triple(
    const std::array<std::uint32_t, 4>& bits, std::size_t m, std::size_t triple_index) const {
  if (triple_index >= kTriplesPerRecord) throw ParamError("triple index out of range");
  for (std::uint32_t b : bits) {
    if (b > 1) throw ParamError("record bits must be 0 or 1");
  }
  const auto& triple = triples(m)[triple_index];

  RunResult result;
  result.requested = m;
  result.queries = triple;
  const PrimeField gf2(2);
  FieldMatrix functionals(gf2, kNodes, 4);
  for (std::size_t k = 1; k <= kNodes; ++k) {
    const std::array<std::uint32_t, 4> f = functional(k, triple[k - 1]);
    for (std::size_t i = 0; i < 4; ++i) functionals(k - 1, i) = f[i];
    result.answers[k - 1] = answer(k, triple[k - 1], bits);
  }

  // Recover each wanted bit as a combination x of the three answers with
  // x^T * functionals = e_target.
  const FieldMatrix ft = functionals.transposed();
  const auto recover = [&](std::size_t target) {
    std::vector<std::uint32_t> e(4, 0);
    e[target] = 1;
    const SolveResult sol = ft.solve_unique(e);
    if (!sol.ok()) throw DecodeError("response table cannot express the requested bit");
    std::uint32_t acc = 0;
    for (std::size_t k = 0; k < kNodes; ++k) acc ^= sol.solution[k] & result.answers[k];
    return acc;
  };
  const std::size_t base = (m - 1) * 2;
  result.decoded = {recover(base), recover(base + 1)};
  return result;
}

Example2Scheme::RunResult Example2Scheme::run(const std::array<std::uint32_t, 4>& bits,
                                              std::size_t m, Rng& rng) const {
  return run_with_triple(bits, m, rng.below(kTriplesPerRecord));
}

CostReport Example2Scheme::costs() const {
  CostReport report;
  report.sc = Rational(1, 2);
  report.rc = Rational(1, 2);
  report.bound = tradeoff_bound(report.sc, kNodes);
  report.tight = report.bound.has_value() && report.rc == *report.bound;
  return report;
}

namespace {

class Example2Oracle final : public EnumerableScheme {
 public:
  std::size_t node_count() const override { return Example2Scheme::kNodes; }
  std::size_t record_count() const override { return Example2Scheme::kRecords; }
  std::uint64_t randomness_count(std::size_t) const override {
    return Example2Scheme::kTriplesPerRecord;
  }
  std::string node_view(std::size_t m, std::uint64_t real, std::size_t k) const override {
    return std::string(1, static_cast<char>(scheme_.triples(m)[real][k - 1]));
  }
  std::uint64_t record_space() const override { return 16; }
  bool run_ok(std::uint64_t rec, std::size_t m, std::uint64_t real) const override {
    const std::array<std::uint32_t, 4> bits = {
        static_cast<std::uint32_t>(rec & 1), static_cast<std::uint32_t>((rec >> 1) & 1),
        static_cast<std::uint32_t>((rec >> 2) & 1), static_cast<std::uint32_t>((rec >> 3) & 1)};
    const auto result = scheme_.run_with_triple(bits, m, real);
    return result.decoded.first == bits[(m - 1) * 2] &&
           result.decoded.second == bits[(m - 1) * 2 + 1];
  }

 private:
  Example2Scheme scheme_;
};

}  // namespace

std::unique_ptr<EnumerableScheme> Example2Scheme::oracle() const {
  return std::make_unique<Example2Oracle>();
}

}  // namespace pir
