#ifndef PIR_SIM_HPP
#define PIR_SIM_HPP

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pir/collusion.hpp"
#include "pir/retrieval.hpp"
#include "pir/rng.hpp"
#include "pir/scheme.hpp"

namespace pir {

enum class Transport { in_process, socket };

/* Stateless-per-session frame handler for one storage node; the only state
   kept across frames is the stored content. Both transports drive the same
   handler, so their behaviour is byte-identical. */
class NodeServer {
 public:
  NodeServer(std::uint16_t node, std::uint32_t q);

  // Full reply frame (ANSWER, STORE ack, or ERROR) for one request frame.
  std::vector<std::uint8_t> handle(const std::vector<std::uint8_t>& request);

 private:
  std::uint16_t node_;
  std::uint32_t q_;
  bool has_content_ = false;
  std::vector<std::uint32_t> content_;
};

/* Client-side handle to one node's message stream. */
class NodeChannel {
 public:
  virtual ~NodeChannel() = default;
  virtual void send(const std::vector<std::uint8_t>& frame) = 0;
  // Throws SessionError on timeout or closed peer.
  virtual std::vector<std::uint8_t> recv(std::chrono::milliseconds timeout) = 0;
};

struct SocketConfig {
  std::string address = "127.0.0.1";
  std::vector<std::uint16_t> ports;  // empty: ephemeral ports chosen by the OS
};

/* K isolated node actors plus one channel per node. Actors run concurrently
   and share no state with the client or each other. */
class Cluster {
 public:
  virtual ~Cluster() = default;
  virtual std::size_t nodes() const = 0;
  virtual NodeChannel& channel(std::size_t k) = 0;  // 1-based
  // Halts one node actor; later replies from it simply never arrive.
  virtual void stop_node(std::size_t k) = 0;
};

std::unique_ptr<Cluster> make_cluster(Transport transport, std::size_t nodes, std::uint32_t q,
                                      const SocketConfig& config = {});

/* What an eavesdropper on the collusion set alpha sees: the exact QUERY
   frame bytes addressed to those nodes, one entry per run (frames
   concatenated in ascending node order). It never contains the requested
   index, the mask, or any other node's traffic. */
struct ObserverLog {
  CollusionPattern::Set alpha;
  std::vector<std::vector<std::uint8_t>> views;
};

struct SessionOptions {
  Transport transport = Transport::in_process;
  std::chrono::milliseconds timeout{5000};
  bool require_certified = true;  // set false to run uncertified schemes
  ObserverLog* observer = nullptr;
};

// Executes one full store/query/answer/decode session against a fresh
// cluster. The transcript is a pure function of (scheme, records, m, rng
// state); the transport cannot change it. Throws SessionError naming the
// node on timeout or a node-reported error, CertificationError when the
// scheme fails certification and options demand it.
Transcript run_session(const Scheme& scheme, const std::vector<RecordMatrix>& records,
                       std::size_t m, Rng& rng, const SessionOptions& options = {});

// Same, against a caller-managed cluster; set store_records_first = false to
// reuse previously stored content.
Transcript run_session_on(Cluster& cluster, const Scheme& scheme,
                          const std::vector<RecordMatrix>& records, std::size_t m, Rng& rng,
                          const SessionOptions& options = {}, bool store_records_first = true);

/* Empirical privacy probe: total-variation distance between the observed
   query-hash distributions conditioned on each requested index, against a
   3-sigma band for identical distributions (expectation bound plus three
   bounded-difference deviations). */
struct ObserverReport {
  std::size_t runs = 0;
  bool defined = false;  // false when runs == 0 or some index was never drawn
  double distance = 0.0;
  double band = 0.0;
  bool within_band = false;
  std::vector<std::vector<std::uint64_t>> counts;  // per record index, per hash bin
};

// Runs `runs` observed sessions (store once, then query rounds over an
// in-process cluster) with M drawn uniformly. alpha must be covered by the
// scheme's collusion pattern.
ObserverReport observe(std::size_t runs, const Scheme& scheme,
                       const CollusionPattern::Set& alpha, Rng& rng, std::size_t bins = 64,
                       ObserverLog* log = nullptr);

}  // namespace pir

#endif  // PIR_SIM_HPP
