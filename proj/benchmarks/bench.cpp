#include <benchmark/benchmark.h>

#include "pir/analysis.hpp"
#include "pir/construct.hpp"
#include "pir/oracles.hpp"
#include "pir/sim.hpp"
#include "pir/wire.hpp"

namespace {

using namespace pir;

void BM_MatrixRank(benchmark::State& state) {
  const std::size_t n = state.range(0);
  Rng rng(1);
  const FieldMatrix m = FieldMatrix::uniform(PrimeField(65537), n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(m.rank());
}
BENCHMARK(BM_MatrixRank)->Arg(16)->Arg(64)->Arg(128);

void BM_Certify(benchmark::State& state) {
  const std::size_t nodes = state.range(0);
  const std::size_t s = nodes / 2;
  const SystemParams params = SystemParams::square(65537, nodes, s, 2);
  const ParityCheck parity = make_mds_parity(nodes, s, 65537);
  Rng rng(2);
  const Scheme scheme{params, parity, random_v(params, rng),
                      CollusionPattern::singletons(nodes), std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(certify(scheme));
}
BENCHMARK(BM_Certify)->Arg(4)->Arg(6)->Arg(8);

void BM_Decode(benchmark::State& state) {
  ConstructOptions options;
  options.nodes = state.range(0);
  options.parity_cols = options.nodes / 2;
  options.seed = 3;
  const ConstructResult r = construct_scheme(options);
  Rng rng(4);
  std::vector<RecordMatrix> records;
  for (std::size_t n = 0; n < r.scheme.params.records; ++n) {
    std::vector<std::uint32_t> info(r.scheme.params.info_symbols());
    for (auto& v : info) v = rng.below(r.scheme.params.q);
    records.push_back(encode_record(info, r.scheme.parity, r.scheme.params.record_rows));
  }
  const auto contents = store_records(records, r.scheme.parity);
  const auto [mask, bundles] = gen_queries(r.scheme.retrieval, 1, r.scheme.params, rng);
  const PrimeField f(r.scheme.params.q);
  std::vector<AnswerBundle> answers;
  for (std::size_t k = 0; k < r.scheme.params.nodes; ++k) {
    answers.push_back(respond(contents[k], bundles[k], f));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode(r.scheme.retrieval, r.scheme.parity, answers, 1,
                                    r.scheme.params));
  }
}
BENCHMARK(BM_Decode)->Arg(4)->Arg(6)->Arg(8);

void BM_WireRoundTrip(benchmark::State& state) {
  wire::Frame frame;
  frame.kind = wire::Kind::query;
  frame.node = 1;
  frame.vectors.assign(4, std::vector<std::uint32_t>(state.range(0), 12345));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wire::decode(wire::encode(frame)));
  }
}
BENCHMARK(BM_WireRoundTrip)->Arg(16)->Arg(256)->Arg(4096);

void BM_InProcessSession(benchmark::State& state) {
  ConstructOptions options;
  options.nodes = 4;
  options.parity_cols = 2;
  options.seed = 5;
  const ConstructResult r = construct_scheme(options);
  Rng rng(6);
  std::vector<RecordMatrix> records;
  for (std::size_t n = 0; n < r.scheme.params.records; ++n) {
    std::vector<std::uint32_t> info(r.scheme.params.info_symbols());
    for (auto& v : info) v = rng.below(r.scheme.params.q);
    records.push_back(encode_record(info, r.scheme.parity, r.scheme.params.record_rows));
  }
  const auto cluster = make_cluster(Transport::in_process, 4, r.scheme.params.q);
  SessionOptions session;
  session.require_certified = false;
  bool stored = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_session_on(*cluster, r.scheme, records, 1, rng, session, stored));
    stored = false;
  }
}
BENCHMARK(BM_InProcessSession);

}  // namespace

BENCHMARK_MAIN();
