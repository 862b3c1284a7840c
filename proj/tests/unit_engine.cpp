#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <variant>

#include "doctest.h"
#include "mdst/sim/engine.hpp"

using namespace mdst;
using namespace mdst::sim;

namespace enginetest {

// Minimal payload for exercising the engine on its own.
struct Ping {
  int hops = 0;
};
using Msg = std::variant<Ping>;

inline std::string message_kind(const Msg&) { return "Ping"; }
inline std::pair<int, int> message_fields(const Msg&) { return {1, 1}; }
inline std::uint64_t message_digest(const Msg& m) {
  return 0x9e3779b9u + static_cast<std::uint64_t>(std::get<Ping>(m).hops);
}

// Sends toward larger ids on init, forwards up to `ttl` hops.
struct RelayNode {
  NodeId id;
  std::vector<std::pair<NodeId, HalfUnit>> nbrs;
  int ttl;
  int received = 0;

  RelayNode(NodeId id, std::vector<std::pair<NodeId, HalfUnit>> n, int ttl)
      : id(id), nbrs(std::move(n)), ttl(ttl) {}

  void on_init(Outbox<Msg>& out) {
    for (auto& [v, w] : nbrs) {
      (void)w;
      if (v > id) out.send(v, Ping{0});
    }
  }
  void on_message(NodeId, const Msg& m, Outbox<Msg>& out) {
    ++received;
    const auto& p = std::get<Ping>(m);
    if (p.hops < ttl)
      for (auto& [v, w] : nbrs) {
        (void)w;
        if (v > id) out.send(v, Ping{p.hops + 1});
      }
  }
  std::size_t state_entries() const { return 1; }
};

struct SilentNode {
  SilentNode(NodeId, std::vector<std::pair<NodeId, HalfUnit>>) {}
  void on_init(Outbox<Msg>&) {}
  void on_message(NodeId, const Msg&, Outbox<Msg>&) {}
  std::size_t state_entries() const { return 0; }
};

// Floods every neighbor forever; used to trip the event budget.
struct ChattyNode {
  NodeId id;
  std::vector<std::pair<NodeId, HalfUnit>> nbrs;
  ChattyNode(NodeId id, std::vector<std::pair<NodeId, HalfUnit>> n) : id(id), nbrs(std::move(n)) {}
  void on_init(Outbox<Msg>& out) {
    for (auto& [v, w] : nbrs) {
      (void)w;
      out.send(v, Ping{0});
    }
  }
  void on_message(NodeId, const Msg&, Outbox<Msg>& out) { on_init(out); }
  std::size_t state_entries() const { return 0; }
};

struct StrayNode {
  NodeId id;
  explicit StrayNode(NodeId id) : id(id) {}
  void on_init(Outbox<Msg>& out) { out.send(id + 40, Ping{0}); }
  void on_message(NodeId, const Msg&, Outbox<Msg>&) {}
  std::size_t state_entries() const { return 0; }
};

}  // namespace enginetest

using namespace enginetest;

namespace {
Graph line(std::size_t n) { return generate_graph(GraphFamily::Line, n, WeightRange{1, 1}, 0); }
}  // namespace

TEST_CASE("a protocol that sends nothing quiesces at time zero") {
  Graph g = line(3);
  Engine<Msg, SilentNode> eng(
      g, [&](NodeId id) { return std::make_unique<SilentNode>(id, g.neighbors(id)); },
      DelayModel::unit(), BitParams::for_graph(g));
  auto res = eng.run(g.nodes());
  CHECK(res.metrics.messages_total == 0);
  CHECK(res.metrics.finish_time == 0);
  CHECK(res.trace.empty());
}

TEST_CASE("unit delay delivers exactly one unit later") {
  Graph g = line(2);
  Engine<Msg, RelayNode> eng(
      g, [&](NodeId id) { return std::make_unique<RelayNode>(id, g.neighbors(id), 0); },
      DelayModel::unit(), BitParams::for_graph(g));
  auto res = eng.run({1});
  REQUIRE(res.trace.size() == 1);
  CHECK(res.trace[0].time == kTicksPerUnit);
  CHECK(res.metrics.finish_time == kTicksPerUnit);
  CHECK(ticks_to_units_str(res.metrics.finish_time) == "1");
}

TEST_CASE("per-channel FIFO holds under any seed") {
  Graph g = line(6);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Engine<Msg, RelayNode> eng(
        g, [&](NodeId id) { return std::make_unique<RelayNode>(id, g.neighbors(id), 6); },
        DelayModel::seeded(seed), BitParams::for_graph(g));
    auto res = eng.run(g.nodes());
    std::map<std::pair<NodeId, NodeId>, std::uint64_t> next_seq;
    for (const auto& t : res.trace) {
      auto ch = std::make_pair(t.src, t.dst);
      CHECK(t.seq == next_seq[ch]);  // delivery order equals send order
      ++next_seq[ch];
    }
    CHECK(res.metrics.finish_time > 0);
  }
}

TEST_CASE("same seed gives byte-identical traces, replay reproduces them") {
  Graph g = line(5);
  auto mk = [&](NodeId id) { return std::make_unique<RelayNode>(id, g.neighbors(id), 5); };
  Engine<Msg, RelayNode> a(g, mk, DelayModel::seeded(11), BitParams::for_graph(g));
  Engine<Msg, RelayNode> b(g, mk, DelayModel::seeded(11), BitParams::for_graph(g));
  auto ra = a.run(g.nodes());
  auto rb = b.run(g.nodes());
  CHECK(ra.trace == rb.trace);
  CHECK(ra.metrics == rb.metrics);

  Engine<Msg, RelayNode> c(g, mk, DelayModel::seeded(999), BitParams::for_graph(g));
  c.replay_delays(ra.trace);
  auto rc = c.run(g.nodes());
  CHECK(rc.trace == ra.trace);
  CHECK(rc.metrics == ra.metrics);
}

TEST_CASE("event budget converts a livelock into an error") {
  Graph g = line(3);
  Engine<Msg, ChattyNode> eng(
      g, [&](NodeId id) { return std::make_unique<ChattyNode>(id, g.neighbors(id)); },
      DelayModel::unit(), BitParams::for_graph(g), 500);
  CHECK_THROWS_AS(eng.run(g.nodes()), SimError);
}

TEST_CASE("sending on a non-existent channel is an error") {
  Graph g = line(3);
  Engine<Msg, StrayNode> eng(
      g, [&](NodeId id) { return std::make_unique<StrayNode>(id); }, DelayModel::unit(),
      BitParams::for_graph(g));
  CHECK_THROWS_AS(eng.run({1}), SimError);
}

TEST_CASE("initiator set must be non-empty and valid") {
  Graph g = line(3);
  Engine<Msg, SilentNode> eng(
      g, [&](NodeId id) { return std::make_unique<SilentNode>(id, g.neighbors(id)); },
      DelayModel::unit(), BitParams::for_graph(g));
  CHECK_THROWS_AS(eng.run({}), SimError);
  Engine<Msg, SilentNode> eng2(
      g, [&](NodeId id) { return std::make_unique<SilentNode>(id, g.neighbors(id)); },
      DelayModel::unit(), BitParams::for_graph(g));
  CHECK_THROWS_AS(eng2.run({77}), SimError);
}

TEST_CASE("bit accounting matches the documented formula") {
  // 16 nodes, max weight 10: 5 bits per id, 9 bits per distance, 8 tag bits.
  Graph g = generate_graph(GraphFamily::Line, 16, WeightRange{10, 10}, 0);
  BitParams p = BitParams::for_graph(g);
  CHECK(p.id_bits == 5);
  CHECK(p.dist_bits == 9);
  CHECK(p.message_bits(2, 1) == 27);  // two ids + one distance
  CHECK(p.message_bits(0, 0) == 8);   // tag byte only

  // additivity over a run
  Graph L2 = line(2);
  Engine<Msg, RelayNode> eng(
      L2, [&](NodeId id) { return std::make_unique<RelayNode>(id, L2.neighbors(id), 0); },
      DelayModel::unit(), BitParams::for_graph(L2));
  auto res = eng.run({1});
  BitParams q = BitParams::for_graph(L2);
  CHECK(res.metrics.bits_total == res.metrics.messages_total * q.message_bits(1, 1));
}

TEST_CASE("seeded delays stay inside the unit window") {
  DelayModel dm = DelayModel::seeded(5);
  Tick prev = 0;
  Tick send = 0;
  for (std::uint64_t seq = 0; seq < 200; ++seq) {
    Tick del = dm.deliver_at(1, 2, seq, send, prev);
    CHECK(del > send);
    CHECK(del <= send + kTicksPerUnit);
    CHECK(del >= prev);
    prev = del;
    send += static_cast<Tick>((seq * 37) % kTicksPerUnit) / 4;  // drift sends forward
  }
}
