// pirtool: construct, certify and simulate coded-storage PIR schemes.
//
// Exit codes: 0 success/certified, 1 check failed, 2 usage or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pir/baselines.hpp"
#include "pir/construct.hpp"
#include "pir/errors.hpp"
#include "pir/oracles.hpp"
#include "pir/serialize.hpp"
#include "pir/sim.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PIR_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw pir::ParseError("PIR_SEED is not an integer: " + std::string(env));
    }
  }
  return std::random_device{}();
}

int cmd_construct(const std::optional<std::uint64_t>& seed_flag, std::uint32_t q,
                  std::size_t nodes, std::optional<std::size_t> parity_cols,
                  std::size_t records, const std::string& code, const std::string& v,
                  std::size_t retries, const std::string& out_path) {
  pir::ConstructOptions options;
  options.q = q;
  options.nodes = nodes;
  options.records = records;
  options.code = code == "uncoded" ? pir::CodeKind::uncoded : pir::CodeKind::mds;
  options.v = v == "cyclic" ? pir::VKind::cyclic : pir::VKind::random;
  options.max_attempts = retries;
  options.seed = resolve_seed(seed_flag);
  if (options.code == pir::CodeKind::uncoded) {
    if (parity_cols && *parity_cols != nodes - 1) {
      throw pir::ParamError("uncoded storage fixes S = K - 1");
    }
    options.parity_cols = nodes - 1;
  } else {
    if (!parity_cols) throw pir::ParamError("--S is required for --code mds");
    options.parity_cols = *parity_cols;
  }

  const pir::ConstructResult result = pir::construct_scheme(options);
  const std::string text = pir::scheme_to_json(result.scheme, 2);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw pir::ParseError("cannot write " + out_path);
    out << text << "\n";
  }
  std::cout << text << "\n";
  std::cerr << "construct: " << (result.report.certified() ? "certified" : "not certified")
            << " (retrievable=" << (result.report.retrievable ? "true" : "false")
            << ", private=" << (result.report.is_private ? "true" : "false") << ") after "
            << result.attempts << " attempt(s)";
  if (result.scheme.seed) std::cerr << ", seed " << *result.scheme.seed;
  std::cerr << "\n";
  return kExitOk;
}

int cmd_check(const std::string& path) {
  const pir::Scheme scheme = pir::load_scheme_file(path);
  const pir::CertificationReport report = pir::certify(scheme);
  Json j;
  j["certification"] = Json::parse(pir::certification_to_json(report));
  j["costs"] = Json::parse(pir::cost_report_to_json(pir::cost_report(scheme.params)));
  std::cout << j.dump(2) << "\n";
  return report.certified() ? kExitOk : kExitCheckFailed;
}

int cmd_simulate(const std::string& scheme_path, const std::string& records_path,
                 std::size_t m, const std::string& transport,
                 const std::optional<std::uint64_t>& seed_flag, bool unsafe) {
  const pir::Scheme scheme = pir::load_scheme_file(scheme_path);

  std::ifstream in(records_path);
  if (!in) throw pir::ParseError("cannot open records file " + records_path);
  std::ostringstream text;
  text << in.rdbuf();
  const auto infos = pir::parse_record_lines(text.str(), scheme.params);
  std::vector<pir::RecordMatrix> records;
  records.reserve(infos.size());
  for (const auto& info : infos) {
    records.push_back(pir::encode_record(info, scheme.parity, scheme.params.record_rows));
  }

  pir::SessionOptions options;
  options.transport = transport == "socket" ? pir::Transport::socket
                                            : pir::Transport::in_process;
  options.require_certified = !unsafe;
  pir::Rng rng(resolve_seed(seed_flag));
  const pir::Transcript transcript = pir::run_session(scheme, records, m, rng, options);

  const bool match = transcript.decoded.has_value() &&
                     *transcript.decoded == records[m - 1];
  Json j = Json::parse(pir::transcript_to_json(transcript));
  j["match"] = match;
  j["transport"] = transport;
  std::cout << j.dump(2) << "\n";
  return match ? kExitOk : kExitCheckFailed;
}

int cmd_examples(int which) {
  Json checks = Json::array();
  bool all = true;
  const auto add = [&](const std::string& name, bool pass) {
    checks.push_back(Json{{"name", name}, {"pass", pass}});
    all = all && pass;
  };

  if (which == 1) {
    const pir::SharingScheme tiny = pir::make_additive_sharing(2, 2, 2);
    const auto oracle = pir::sharing_oracle(tiny);
    pir::Rng rng(1);
    add("exhaustive decode q=2 N=2 K=2", pir::brute_errorfree(*oracle, rng));
    add("exhaustive singleton privacy q=2 N=2 K=2",
        pir::brute_privacy(*oracle, pir::CollusionPattern::singletons(2)));

    const pir::SharingScheme wide = pir::make_additive_sharing(7, 4, 3);
    pir::Rng rng2(2);
    bool decode_ok = true;
    bool reconstruct_ok = true;
    const pir::PrimeField f(7);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<std::uint32_t> data(3);
      for (auto& d : data) d = rng2.below(7);
      const std::size_t m = 1 + rng2.below(3);
      const pir::SharingTranscript t = pir::sharing_retrieve(wide, data, m, rng2);
      decode_ok = decode_ok && t.decoded == data[m - 1];
      for (std::size_t n = 0; n < 3; ++n) {
        std::uint32_t acc = 0;
        for (const auto& share : t.queries) acc = f.add(acc, share[n]);
        reconstruct_ok = reconstruct_ok && acc == (n == m - 1 ? 1u : 0u);
      }
    }
    add("random decode q=7 N=3 K=4", decode_ok);
    add("share reconstruction identity", reconstruct_ok);
  } else if (which == 2) {
    const pir::Example2Scheme scheme;
    int good = 0;
    for (std::uint32_t value = 0; value < 16; ++value) {
      const std::array<std::uint32_t, 4> bits = {value & 1, (value >> 1) & 1, (value >> 2) & 1,
                                                 (value >> 3) & 1};
      for (std::size_t m = 1; m <= 2; ++m) {
        for (std::size_t triple = 0; triple < 3; ++triple) {
          const auto run = scheme.run_with_triple(bits, m, triple);
          good += run.decoded.first == bits[(m - 1) * 2] &&
                  run.decoded.second == bits[(m - 1) * 2 + 1];
        }
      }
    }
    add("decode 96/96 cases", good == 96);
    const auto oracle = scheme.oracle();
    add("exact singleton privacy (zero mutual information)",
        pir::brute_privacy(*oracle, pir::CollusionPattern::singletons(3)));
    pir::Rng rng(1);
    add("exact error-freeness", pir::brute_errorfree(*oracle, rng));
    const pir::CostReport costs = scheme.costs();
    add("costs are (1/2, 1/2)",
        costs.sc == pir::Rational(1, 2) && costs.rc == pir::Rational(1, 2));
  } else {
    throw pir::ParseError("--which must be 1 or 2");
  }

  Json j;
  j["example"] = which;
  j["checks"] = std::move(checks);
  j["all_pass"] = all;
  std::cout << j.dump(2) << "\n";
  return all ? kExitOk : kExitCheckFailed;
}

int cmd_tradeoff(const std::string& sc_text, std::size_t nodes) {
  const pir::Rational sc = pir::Rational::parse(sc_text);
  if (sc <= pir::Rational(0)) throw pir::ParseError("--sc must be positive");
  const auto bound = pir::tradeoff_bound(sc, nodes);
  Json j;
  j["sc"] = sc.str();
  j["K"] = nodes;
  j["feasible"] = bound.has_value();
  j["bound"] = bound ? Json(bound->str()) : Json(nullptr);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coded-storage private information retrieval toolkit"};
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand("construct", "build and certify a scheme");
  std::uint32_t q = 65537;
  std::size_t nodes = 0;
  std::optional<std::size_t> parity_cols;
  std::size_t records = 2;
  std::string code = "mds";
  std::string v_kind = "random";
  std::optional<std::uint64_t> seed;
  std::size_t retries = 5;
  std::string out_path;
  construct->add_option("--q", q, "prime field modulus");
  construct->add_option("--K", nodes, "number of storage nodes")->required();
  construct->add_option("--S", parity_cols, "parity columns (required for mds)");
  construct->add_option("--N", records, "number of records");
  construct->add_option("--code", code, "storage code")
      ->check(CLI::IsMember({"mds", "uncoded"}));
  construct->add_option("--v", v_kind, "retrieval matrix construction")
      ->check(CLI::IsMember({"random", "cyclic"}));
  construct->add_option("--seed", seed, "seed (falls back to PIR_SEED, then entropy)");
  construct->add_option("--retries", retries, "seed attempts for --v random");
  construct->add_option("--out", out_path, "also write the scheme file here");

  // check
  auto* check = app.add_subcommand("check", "certify a scheme file");
  std::string check_path;
  check->add_option("path", check_path, "scheme file")->required();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run one full protocol session");
  std::string scheme_path;
  std::string records_path;
  std::size_t m = 0;
  std::string transport = "inprocess";
  bool unsafe = false;
  std::optional<std::uint64_t> sim_seed;
  simulate->add_option("--scheme", scheme_path, "scheme file")->required();
  simulate->add_option("--records", records_path, "record file, one record per line")
      ->required();
  simulate->add_option("--m", m, "requested record index (1-based)")->required();
  simulate->add_option("--transport", transport, "transport")
      ->check(CLI::IsMember({"inprocess", "socket"}));
  simulate->add_option("--seed", sim_seed, "seed (falls back to PIR_SEED, then entropy)");
  simulate->add_flag("--unsafe", unsafe, "run even if the scheme is not certified");

  // examples
  auto* examples = app.add_subcommand("examples", "verify the built-in example fixtures");
  int which = 0;
  examples->add_option("--which", which, "1 = secret sharing, 2 = fixed coded scheme")
      ->required();

  // tradeoff
  auto* tradeoff = app.add_subcommand("tradeoff", "print the retrieval-cost lower bound");
  std::string sc_text;
  std::size_t tradeoff_nodes = 0;
  tradeoff->add_option("--sc", sc_text, "storage cost as a rational, e.g. 1/2")->required();
  tradeoff->add_option("--K", tradeoff_nodes, "number of storage nodes")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (construct->parsed()) {
      return cmd_construct(seed, q, nodes, parity_cols, records, code, v_kind, retries,
                           out_path);
    }
    if (check->parsed()) return cmd_check(check_path);
    if (simulate->parsed()) {
      return cmd_simulate(scheme_path, records_path, m, transport, sim_seed, unsafe);
    }
    if (examples->parsed()) return cmd_examples(which);
    if (tradeoff->parsed()) return cmd_tradeoff(sc_text, tradeoff_nodes);
  } catch (const pir::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pir::ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pir::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
