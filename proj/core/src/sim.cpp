#include "pir/sim.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <optional>
#include <thread>

#include "pir/analysis.hpp"
#include "pir/errors.hpp"
#include "pir/wire.hpp"

namespace pir {

// ---------------------------------------------------------------------------
// Node actor

NodeServer::NodeServer(std::uint16_t node, std::uint32_t q) : node_(node), q_(q) {}

std::vector<std::uint8_t> NodeServer::handle(const std::vector<std::uint8_t>& request) {
  using wire::ErrorCode;
  const auto fail = [&](ErrorCode code) { return wire::encode(wire::make_error(node_, code)); };

  wire::Frame frame;
  try {
    frame = wire::decode(request);
  } catch (const WireError&) {
    return fail(ErrorCode::malformed);
  }
  if (frame.node != node_) return fail(ErrorCode::wrong_node);

  const auto residues_ok = [&](const std::vector<std::uint32_t>& v) {
    return std::all_of(v.begin(), v.end(), [&](std::uint32_t e) { return e < q_; });
  };

  switch (frame.kind) {
    case wire::Kind::store: {
      if (frame.vectors.size() != 1) return fail(ErrorCode::dimension_mismatch);
      if (!residues_ok(frame.vectors[0])) return fail(ErrorCode::modulus_mismatch);
      content_ = frame.vectors[0];
      has_content_ = true;
      wire::Frame ack;
      ack.kind = wire::Kind::store;
      ack.node = node_;
      return wire::encode(ack);
    }
    case wire::Kind::query: {
      if (!has_content_) return fail(ErrorCode::no_content);
      std::vector<std::uint32_t> answers;
      answers.reserve(frame.vectors.size());
      for (const auto& query : frame.vectors) {
        if (query.size() != content_.size()) return fail(ErrorCode::dimension_mismatch);
        if (!residues_ok(query)) return fail(ErrorCode::modulus_mismatch);
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < query.size(); ++i) {
          acc = (acc + std::uint64_t(query[i]) * content_[i]) % q_;
        }
        answers.push_back(static_cast<std::uint32_t>(acc));
      }
      wire::Frame reply;
      reply.kind = wire::Kind::answer;
      reply.node = node_;
      reply.vectors = {std::move(answers)};
      return wire::encode(reply);
    }
    default:
      return fail(ErrorCode::unexpected_kind);
  }
}

// ---------------------------------------------------------------------------
// In-process transport

namespace {

class ByteQueue {
 public:
  void push(std::vector<std::uint8_t> bytes) {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (closed_) return;
      items_.push_back(std::move(bytes));
    }
    cv_.notify_all();
  }

  // Blocks until an item arrives, the queue closes, or the timeout elapses.
  std::optional<std::vector<std::uint8_t>> pop(std::chrono::milliseconds timeout) {
    std::unique_lock<std::mutex> lock(mutex_);
    cv_.wait_for(lock, timeout, [&] { return closed_ || !items_.empty(); });
    if (items_.empty()) return std::nullopt;
    std::vector<std::uint8_t> out = std::move(items_.front());
    items_.pop_front();
    return out;
  }

  // Blocks without timeout; nullopt only when closed and drained.
  std::optional<std::vector<std::uint8_t>> pop_wait() {
    std::unique_lock<std::mutex> lock(mutex_);
    cv_.wait(lock, [&] { return closed_ || !items_.empty(); });
    if (items_.empty()) return std::nullopt;
    std::vector<std::uint8_t> out = std::move(items_.front());
    items_.pop_front();
    return out;
  }

  void close() {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      closed_ = true;
    }
    cv_.notify_all();
  }

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  std::deque<std::vector<std::uint8_t>> items_;
  bool closed_ = false;
};

class InProcessCluster final : public Cluster {
 public:
  InProcessCluster(std::size_t nodes, std::uint32_t q) : actors_(nodes) {
    for (std::size_t k = 0; k < nodes; ++k) {
      Actor& actor = actors_[k];
      actor.channel.reset(new Channel(*this, k + 1));
      actor.thread = std::thread([&actor, k, q] {
        NodeServer server(static_cast<std::uint16_t>(k + 1), q);
        while (auto request = actor.inbox.pop_wait()) {
          actor.outbox.push(server.handle(*request));
        }
      });
    }
  }

  ~InProcessCluster() override {
    for (std::size_t k = 1; k <= actors_.size(); ++k) stop_node(k);
  }

  std::size_t nodes() const override { return actors_.size(); }

  NodeChannel& channel(std::size_t k) override { return *actors_.at(k - 1).channel; }

  void stop_node(std::size_t k) override {
    Actor& actor = actors_.at(k - 1);
    actor.inbox.close();
    actor.outbox.close();
    if (actor.thread.joinable()) actor.thread.join();
  }

 private:
  struct Actor;

  class Channel final : public NodeChannel {
   public:
    Channel(InProcessCluster& cluster, std::size_t node) : cluster_(cluster), node_(node) {}
    void send(const std::vector<std::uint8_t>& frame) override {
      cluster_.actors_[node_ - 1].inbox.push(frame);
    }
    std::vector<std::uint8_t> recv(std::chrono::milliseconds timeout) override {
      auto reply = cluster_.actors_[node_ - 1].outbox.pop(timeout);
      if (!reply) throw SessionError(node_, "timeout waiting for reply");
      return std::move(*reply);
    }

   private:
    InProcessCluster& cluster_;
    std::size_t node_;
  };

  struct Actor {
    ByteQueue inbox;
    ByteQueue outbox;
    std::thread thread;
    std::unique_ptr<Channel> channel;
  };

  std::vector<Actor> actors_;
};

// ---------------------------------------------------------------------------
// Socket transport (loopback TCP, one stream per node)

void close_fd(int& fd) {
  if (fd >= 0) {
    ::shutdown(fd, SHUT_RDWR);
    ::close(fd);
    fd = -1;
  }
}

// Reads exactly n bytes; false on EOF/closed socket, throws on timeout.
bool read_exact(int fd, std::uint8_t* out, std::size_t n, std::chrono::milliseconds timeout,
                std::size_t node) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  std::size_t got = 0;
  while (got < n) {
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) throw SessionError(node, "timeout waiting for reply");
    struct pollfd pfd{fd, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (ready == 0) throw SessionError(node, "timeout waiting for reply");
    if (ready < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    const ssize_t r = ::read(fd, out + got, n - got);
    if (r <= 0) return false;
    got += static_cast<std::size_t>(r);
  }
  return true;
}

bool write_all(int fd, const std::uint8_t* data, std::size_t n) {
  std::size_t sent = 0;
  while (sent < n) {
    const ssize_t w = ::send(fd, data + sent, n - sent, MSG_NOSIGNAL);
    if (w <= 0) {
      if (w < 0 && errno == EINTR) continue;
      return false;
    }
    sent += static_cast<std::size_t>(w);
  }
  return true;
}

std::optional<std::vector<std::uint8_t>> read_frame(int fd, std::chrono::milliseconds timeout,
                                                    std::size_t node) {
  std::vector<std::uint8_t> bytes(wire::kHeaderSize);
  if (!read_exact(fd, bytes.data(), wire::kHeaderSize, timeout, node)) return std::nullopt;
  if (bytes[0] != wire::kMagic0 || bytes[1] != wire::kMagic1) {
    throw SessionError(node, "bad magic in frame header");
  }
  const std::size_t payload = wire::payload_length(bytes.data());
  bytes.resize(wire::kHeaderSize + payload);
  if (!read_exact(fd, bytes.data() + wire::kHeaderSize, payload, timeout, node)) {
    return std::nullopt;
  }
  return bytes;
}

class SocketCluster final : public Cluster {
 public:
  SocketCluster(std::size_t nodes, std::uint32_t q, const SocketConfig& config)
      : actors_(nodes) {
    if (!config.ports.empty() && config.ports.size() != nodes) {
      throw ParamError("socket config must list one port per node");
    }
    for (std::size_t k = 0; k < nodes; ++k) {
      Actor& actor = actors_[k];
      actor.node = k + 1;
      const std::uint16_t want_port = config.ports.empty() ? 0 : config.ports[k];
      actor.listen_fd = open_listener(config.address, want_port, actor.port);
      actor.channel.reset(new Channel(actor, config.address));
      actor.thread = std::thread([&actor, q] { actor_loop(actor, q); });
    }
  }

  ~SocketCluster() override {
    for (std::size_t k = 1; k <= actors_.size(); ++k) stop_node(k);
  }

  std::size_t nodes() const override { return actors_.size(); }

  NodeChannel& channel(std::size_t k) override { return *actors_.at(k - 1).channel; }

  void stop_node(std::size_t k) override {
    Actor& actor = actors_.at(k - 1);
    actor.stopping = true;
    close_fd(actor.listen_fd);
    {
      std::lock_guard<std::mutex> lock(actor.conn_mutex);
      close_fd(actor.conn_fd);
    }
    if (actor.thread.joinable()) actor.thread.join();
  }

  std::uint16_t port(std::size_t k) const { return actors_.at(k - 1).port; }

 private:
  struct Actor;

  class Channel final : public NodeChannel {
   public:
    Channel(Actor& actor, std::string address) : actor_(actor), address_(std::move(address)) {}

    ~Channel() override { close_fd(fd_); }

    void send(const std::vector<std::uint8_t>& frame) override {
      if (fd_ < 0) connect_to_node();
      if (!write_all(fd_, frame.data(), frame.size())) {
        throw SessionError(actor_.node, "connection lost while sending");
      }
    }

    std::vector<std::uint8_t> recv(std::chrono::milliseconds timeout) override {
      if (fd_ < 0) throw SessionError(actor_.node, "not connected");
      auto frame = read_frame(fd_, timeout, actor_.node);
      if (!frame) throw SessionError(actor_.node, "connection closed by node");
      return std::move(*frame);
    }

   private:
    void connect_to_node() {
      fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
      if (fd_ < 0) throw SessionError(actor_.node, "socket() failed");
      sockaddr_in addr{};
      addr.sin_family = AF_INET;
      addr.sin_port = htons(actor_.port);
      if (::inet_pton(AF_INET, address_.c_str(), &addr.sin_addr) != 1) {
        throw SessionError(actor_.node, "bad node address " + address_);
      }
      if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        close_fd(fd_);
        throw SessionError(actor_.node, "connect failed: " + std::string(strerror(errno)));
      }
    }

    Actor& actor_;
    std::string address_;
    int fd_ = -1;
  };

  struct Actor {
    std::size_t node = 0;
    int listen_fd = -1;
    std::uint16_t port = 0;
    std::thread thread;
    std::unique_ptr<Channel> channel;
    std::mutex conn_mutex;
    int conn_fd = -1;
    std::atomic<bool> stopping{false};
  };

  static int open_listener(const std::string& address, std::uint16_t port,
                           std::uint16_t& actual_port) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) throw ParamError("socket() failed");
    const int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, address.c_str(), &addr.sin_addr) != 1) {
      ::close(fd);
      throw ParamError("bad listen address " + address);
    }
    if (::bind(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
      ::close(fd);
      throw ParamError("bind failed on " + address + ":" + std::to_string(port) + ": " +
                       strerror(errno));
    }
    if (::listen(fd, 1) != 0) {
      ::close(fd);
      throw ParamError("listen failed");
    }
    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    ::getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len);
    actual_port = ntohs(bound.sin_port);
    return fd;
  }

  static void actor_loop(Actor& actor, std::uint32_t q) {
    NodeServer server(static_cast<std::uint16_t>(actor.node), q);
    while (!actor.stopping) {
      const int conn = ::accept(actor.listen_fd, nullptr, nullptr);
      if (conn < 0) {
        if (errno == EINTR) continue;
        return;  // listener closed
      }
      {
        std::lock_guard<std::mutex> lock(actor.conn_mutex);
        actor.conn_fd = conn;
      }
      // Serve frames on this connection until the peer closes it. The read
      // timeout here only bounds the wait between client frames.
      try {
        while (!actor.stopping) {
          auto request = read_frame(conn, std::chrono::hours(1), actor.node);
          if (!request) break;
          const std::vector<std::uint8_t> reply = server.handle(*request);
          if (!write_all(conn, reply.data(), reply.size())) break;
        }
      } catch (const SessionError&) {
        // timeout or garbage header: drop the connection
      }
      std::lock_guard<std::mutex> lock(actor.conn_mutex);
      close_fd(actor.conn_fd);
    }
  }

  std::vector<Actor> actors_;
};

}  // namespace

std::unique_ptr<Cluster> make_cluster(Transport transport, std::size_t nodes, std::uint32_t q,
                                      const SocketConfig& config) {
  if (transport == Transport::in_process) {
    return std::make_unique<InProcessCluster>(nodes, q);
  }
  return std::make_unique<SocketCluster>(nodes, q, config);
}

// ---------------------------------------------------------------------------
// Sessions

namespace {

std::string error_code_name(std::uint32_t code) {
  switch (static_cast<wire::ErrorCode>(code)) {
    case wire::ErrorCode::malformed:
      return "malformed frame";
    case wire::ErrorCode::modulus_mismatch:
      return "modulus mismatch";
    case wire::ErrorCode::dimension_mismatch:
      return "dimension mismatch";
    case wire::ErrorCode::no_content:
      return "no stored content";
    case wire::ErrorCode::unexpected_kind:
      return "unexpected frame kind";
    case wire::ErrorCode::wrong_node:
      return "frame addressed to wrong node";
  }
  return "error code " + std::to_string(code);
}

wire::Frame expect_reply(NodeChannel& channel, std::size_t node, wire::Kind kind,
                         std::chrono::milliseconds timeout) {
  wire::Frame reply;
  try {
    reply = wire::decode(channel.recv(timeout));
  } catch (const WireError& e) {
    throw SessionError(node, std::string("malformed reply: ") + e.what());
  }
  if (reply.node != node) throw SessionError(node, "reply carries wrong node index");
  if (reply.kind == wire::Kind::error) {
    const std::uint32_t code =
        reply.vectors.empty() || reply.vectors[0].empty() ? 0 : reply.vectors[0][0];
    throw SessionError(node, "node reported " + error_code_name(code));
  }
  if (reply.kind != kind) throw SessionError(node, "unexpected reply kind");
  return reply;
}

void store_phase(Cluster& cluster, const Scheme& scheme,
                 const std::vector<NodeContent>& contents,
                 std::chrono::milliseconds timeout) {
  for (std::size_t k = 1; k <= scheme.params.nodes; ++k) {
    wire::Frame frame;
    frame.kind = wire::Kind::store;
    frame.node = static_cast<std::uint16_t>(k);
    frame.vectors = {contents[k - 1].symbols};
    cluster.channel(k).send(wire::encode(frame));
  }
  for (std::size_t k = 1; k <= scheme.params.nodes; ++k) {
    expect_reply(cluster.channel(k), k, wire::Kind::store, timeout);
  }
}

std::vector<AnswerBundle> query_phase(Cluster& cluster, const Scheme& scheme,
                                      const std::vector<QueryBundle>& bundles,
                                      std::chrono::milliseconds timeout,
                                      ObserverLog* observer) {
  std::vector<std::uint8_t> observed;
  for (std::size_t k = 1; k <= scheme.params.nodes; ++k) {
    wire::Frame frame;
    frame.kind = wire::Kind::query;
    frame.node = static_cast<std::uint16_t>(k);
    frame.vectors = bundles[k - 1].queries;
    const std::vector<std::uint8_t> bytes = wire::encode(frame);
    if (observer != nullptr &&
        std::find(observer->alpha.begin(), observer->alpha.end(), k) != observer->alpha.end()) {
      observed.insert(observed.end(), bytes.begin(), bytes.end());
    }
    cluster.channel(k).send(bytes);
  }
  if (observer != nullptr) observer->views.push_back(std::move(observed));

  std::vector<AnswerBundle> answers;
  answers.reserve(scheme.params.nodes);
  for (std::size_t k = 1; k <= scheme.params.nodes; ++k) {
    const wire::Frame reply = expect_reply(cluster.channel(k), k, wire::Kind::answer, timeout);
    if (reply.vectors.size() != 1 || reply.vectors[0].size() != scheme.params.node_queries) {
      throw SessionError(k, "answer bundle has wrong shape");
    }
    answers.push_back(AnswerBundle{k, reply.vectors[0]});
  }
  return answers;
}

}  // namespace

Transcript run_session_on(Cluster& cluster, const Scheme& scheme,
                          const std::vector<RecordMatrix>& records, std::size_t m, Rng& rng,
                          const SessionOptions& options, bool store_records_first) {
  scheme.check_shapes();
  if (m < 1 || m > scheme.params.records) {
    throw ParamError("record index " + std::to_string(m) + " out of 1.." +
                     std::to_string(scheme.params.records));
  }
  if (records.size() != scheme.params.records) {
    throw ParamError("expected " + std::to_string(scheme.params.records) + " records");
  }
  if (options.require_certified) {
    const CertificationReport report = certify(scheme);
    if (!report.certified()) {
      throw CertificationError(std::string("scheme is not certified: ") +
                               (report.retrievable ? "privacy" : "retrievability") +
                               " condition fails");
    }
  }

  if (store_records_first) {
    store_phase(cluster, scheme, store_records(records, scheme.parity), options.timeout);
  }

  auto [mask, bundles] = gen_queries(scheme.retrieval, m, scheme.params, rng);
  std::vector<AnswerBundle> answers =
      query_phase(cluster, scheme, bundles, options.timeout, options.observer);

  Transcript transcript{m, std::move(mask), std::move(bundles), std::move(answers),
                        std::nullopt};
  transcript.decoded =
      decode(scheme.retrieval, scheme.parity, transcript.answers, m, scheme.params);
  return transcript;
}

Transcript run_session(const Scheme& scheme, const std::vector<RecordMatrix>& records,
                       std::size_t m, Rng& rng, const SessionOptions& options) {
  const std::unique_ptr<Cluster> cluster =
      make_cluster(options.transport, scheme.params.nodes, scheme.params.q);
  return run_session_on(*cluster, scheme, records, m, rng, options, true);
}

// ---------------------------------------------------------------------------
// Observer statistics

namespace {

std::uint64_t fnv1a(const std::vector<std::uint8_t>& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  // Low bits of the raw multiplicative state stay structured on short
  // inputs; finalize before reducing to a bin index.
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ull;
  h ^= h >> 33;
  return h;
}

}  // namespace

ObserverReport observe(std::size_t runs, const Scheme& scheme,
                       const CollusionPattern::Set& alpha, Rng& rng, std::size_t bins,
                       ObserverLog* log) {
  scheme.check_shapes();
  if (alpha.empty()) throw ParamError("empty collusion set");
  bool covered = false;
  for (const CollusionPattern::Set& s : scheme.phi.sets()) {
    covered = covered || std::includes(s.begin(), s.end(), alpha.begin(), alpha.end());
  }
  if (!covered) throw ParamError("alpha is not covered by the scheme's collusion pattern");

  ObserverReport report;
  report.runs = runs;
  report.counts.assign(scheme.params.records, std::vector<std::uint64_t>(bins, 0));
  if (runs == 0) return report;

  const PrimeField field = scheme.params.validate();
  // Fixed random records; query distributions do not depend on them.
  const FieldMatrix basis = scheme.parity.matrix().transposed().null_space();
  std::vector<RecordMatrix> records;
  for (std::size_t n = 0; n < scheme.params.records; ++n) {
    FieldMatrix data(field, scheme.params.record_rows, scheme.params.nodes);
    for (std::size_t l = 0; l < scheme.params.record_rows; ++l) {
      std::vector<std::uint32_t> coeff(basis.cols());
      for (std::uint32_t& c : coeff) c = field.uniform(rng);
      data.set_row(l, basis.mul_vector(coeff));
    }
    records.push_back(RecordMatrix{std::move(data)});
  }

  const std::unique_ptr<Cluster> cluster =
      make_cluster(Transport::in_process, scheme.params.nodes, scheme.params.q);
  SessionOptions options;
  store_phase(*cluster, scheme, store_records(records, scheme.parity), options.timeout);

  ObserverLog local_log;
  ObserverLog* sink = log != nullptr ? log : &local_log;
  sink->alpha = alpha;
  for (std::size_t run = 0; run < runs; ++run) {
    const std::size_t m = 1 + rng.below(static_cast<std::uint32_t>(scheme.params.records));
    auto [mask, bundles] = gen_queries(scheme.retrieval, m, scheme.params, rng);
    query_phase(*cluster, scheme, bundles, options.timeout, sink);
    const std::uint64_t h = fnv1a(sink->views.back());
    ++report.counts[m - 1][h % bins];
    if (log == nullptr) local_log.views.clear();
  }

  // Max pairwise total-variation distance, each pair against its own band.
  report.defined = true;
  report.within_band = true;
  double worst = -1.0;
  double worst_band = 0.0;
  for (std::size_t i = 0; i < scheme.params.records; ++i) {
    for (std::size_t j = i + 1; j < scheme.params.records; ++j) {
      double ni = 0;
      double nj = 0;
      for (std::size_t b = 0; b < bins; ++b) {
        ni += static_cast<double>(report.counts[i][b]);
        nj += static_cast<double>(report.counts[j][b]);
      }
      if (ni == 0 || nj == 0) {
        report.defined = false;
        continue;
      }
      double tv = 0;
      double mean_bound = 0;
      for (std::size_t b = 0; b < bins; ++b) {
        const double pi = static_cast<double>(report.counts[i][b]) / ni;
        const double pj = static_cast<double>(report.counts[j][b]) / nj;
        tv += std::abs(pi - pj);
        const double pooled =
            (static_cast<double>(report.counts[i][b]) + static_cast<double>(report.counts[j][b])) /
            (ni + nj);
        mean_bound += std::sqrt(pooled) * (1.0 / std::sqrt(ni) + 1.0 / std::sqrt(nj));
      }
      tv *= 0.5;
      mean_bound *= 0.5;
      const double band = mean_bound + 1.5 * std::sqrt(1.0 / ni + 1.0 / nj);
      if (tv > band) report.within_band = false;
      if (tv > worst) {
        worst = tv;
        worst_band = band;
      }
    }
  }
  if (worst < 0) {
    report.defined = false;
  } else {
    report.distance = worst;
    report.band = worst_band;
  }
  return report;
}

}  // namespace pir
