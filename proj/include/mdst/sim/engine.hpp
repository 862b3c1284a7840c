#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mdst/graph.hpp"

namespace mdst::sim {

// Virtual time in integer ticks; one standard delay unit is kTicksPerUnit,
// so every instant is an exact rational multiple of the unit.
using Tick = std::int64_t;
inline constexpr Tick kTicksPerUnit = 1'000'000;

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DelayMode { Unit, SeededRandom };

// Per-message delay in (0, 1]. Unit mode always picks exactly one unit.
// Seeded mode draws deterministically from (channel, sequence number) and
// squeezes the draw into the window left open by the previous delivery on
// the channel, so FIFO order can never break.
struct DelayModel {
  DelayMode mode = DelayMode::Unit;
  std::uint64_t seed = 0;

  static DelayModel unit() { return DelayModel{DelayMode::Unit, 0}; }
  static DelayModel seeded(std::uint64_t s) { return DelayModel{DelayMode::SeededRandom, s}; }

  Tick deliver_at(NodeId src, NodeId dst, std::uint64_t seq, Tick send,
                  Tick prev_deliver) const {
    if (mode == DelayMode::Unit) return send + kTicksPerUnit;
    Tick lo = prev_deliver > send ? prev_deliver - send : 0;  // exclusive lower bound
    if (lo >= kTicksPerUnit) return send + kTicksPerUnit;
    Rng rng(mix_seed(mix_seed(seed, static_cast<std::uint64_t>(src) * 0x1f123bb5ULL +
                                        static_cast<std::uint64_t>(dst)),
                     seq));
    Tick d = lo + 1 + static_cast<Tick>(rng.next() % static_cast<std::uint64_t>(kTicksPerUnit - lo));
    return send + d;
  }
};

struct TraceEntry {
  Tick time = 0;
  NodeId src = 0;
  NodeId dst = 0;
  std::string kind;
  std::uint64_t digest = 0;
  std::uint64_t seq = 0;
  bool operator==(const TraceEntry&) const = default;
};

using Trace = std::vector<TraceEntry>;

struct Metrics {
  std::uint64_t messages_total = 0;
  std::map<std::string, std::uint64_t> messages_by_kind;
  std::uint64_t bits_total = 0;
  Tick finish_time = 0;
  std::map<NodeId, std::size_t> per_node_state_size;
  bool operator==(const Metrics&) const = default;
};

// Bit accounting, applied uniformly to every message: one tag byte, plus
// ceil(log2(n+1)) bits per node-id field and ceil(log2(2nW+1)) bits per
// distance field (the largest loop-free path in half units is below 2nW).
struct BitParams {
  int id_bits = 1;
  int dist_bits = 1;

  static int bits_for(std::uint64_t max_value) {
    int b = 0;
    while (max_value > 0) {
      ++b;
      max_value >>= 1;
    }
    return b == 0 ? 1 : b;
  }
  static BitParams for_graph(const Graph& g) {
    BitParams p;
    p.id_bits = bits_for(g.node_count());
    p.dist_bits = bits_for(2 * g.node_count() *
                           static_cast<std::uint64_t>(g.max_weight_units()));
    return p;
  }
  std::uint64_t message_bits(int id_fields, int dist_fields) const {
    return 8 + static_cast<std::uint64_t>(id_fields) * id_bits +
           static_cast<std::uint64_t>(dist_fields) * dist_bits;
  }
};

template <class M>
struct Outbox {
  std::vector<std::pair<NodeId, M>> sent;
  void send(NodeId to, M m) { sent.push_back({to, std::move(m)}); }
};

// Message-type hooks every payload type must provide (found by ADL):
//   std::string message_kind(const M&);
//   std::pair<int,int> message_fields(const M&);   // (id fields, distance fields)
//   std::uint64_t message_digest(const M&);

// The protocol node contract: a pure, engine-driven state machine.
//   void on_init(Outbox<M>&);
//   void on_message(NodeId from, const M&, Outbox<M>&);
//   std::size_t state_entries() const;

template <class M, class NodeT>
class Engine {
 public:
  using Factory = std::function<std::unique_ptr<NodeT>(NodeId)>;

  Engine(const Graph& g, Factory factory, DelayModel delay, BitParams bits,
         std::uint64_t event_budget = 10'000'000)
      : graph_(g), delay_(delay), bits_(bits), budget_(event_budget) {
    for (NodeId id : g.nodes()) nodes_[id] = factory(id);
  }

  struct Result {
    Metrics metrics;
    Trace trace;
  };

  // Runs to quiescence. Initiators get their init event at time zero, in id
  // order; deliveries are processed in (time, dst, src, channel seq) order.
  Result run(const std::vector<NodeId>& initiators) {
    if (initiators.empty()) throw SimError("initiator set must be non-empty");
    std::vector<NodeId> inits = initiators;
    std::sort(inits.begin(), inits.end());
    inits.erase(std::unique(inits.begin(), inits.end()), inits.end());
    for (NodeId id : inits) {
      if (!graph_.has_node(id)) throw SimError("initiator is not a node");
      Outbox<M> out;
      nodes_.at(id)->on_init(out);
      enqueue_all(id, 0, out);
    }
    Result res;
    std::uint64_t processed = 0;
    while (!queue_.empty()) {
      Envelope env = queue_.top();
      queue_.pop();
      if (++processed > budget_)
        throw SimError("event budget exceeded; protocol failed to quiesce");
      res.trace.push_back(TraceEntry{env.deliver, env.src, env.dst, message_kind(env.payload),
                                     message_digest(env.payload), env.seq});
      metrics_.messages_total += 1;
      metrics_.messages_by_kind[message_kind(env.payload)] += 1;
      auto [idf, df] = message_fields(env.payload);
      metrics_.bits_total += bits_.message_bits(idf, df);
      if (env.deliver > metrics_.finish_time) metrics_.finish_time = env.deliver;
      Outbox<M> out;
      try {
        nodes_.at(env.dst)->on_message(env.src, env.payload, out);
      } catch (const std::exception& ex) {
        throw SimError("at event " + std::to_string(processed - 1) + " (t=" +
                       std::to_string(env.deliver) + ", " + std::to_string(env.src) + "->" +
                       std::to_string(env.dst) + " " + message_kind(env.payload) +
                       "): " + ex.what());
      }
      enqueue_all(env.dst, env.deliver, out);
    }
    for (const auto& [id, node] : nodes_) metrics_.per_node_state_size[id] = node->state_entries();
    res.metrics = metrics_;
    return res;
  }

  const NodeT& node(NodeId id) const { return *nodes_.at(id); }
  std::map<NodeId, const NodeT*> node_view() const {
    std::map<NodeId, const NodeT*> v;
    for (const auto& [id, n] : nodes_) v[id] = n.get();
    return v;
  }

  // Replays recorded delivery times instead of drawing delays.
  void replay_delays(const Trace& trace) {
    for (const auto& t : trace) replay_times_[{t.src, t.dst, t.seq}] = t.time;
    replaying_ = true;
  }

 private:
  struct Envelope {
    Tick deliver = 0;
    NodeId dst = 0;
    NodeId src = 0;
    std::uint64_t seq = 0;
    M payload;
    // min-heap on (deliver, dst, src, seq)
    bool operator>(const Envelope& o) const {
      return std::tie(deliver, dst, src, seq) > std::tie(o.deliver, o.dst, o.src, o.seq);
    }
  };

  void enqueue_all(NodeId from, Tick now, Outbox<M>& out) {
    for (auto& [to, payload] : out.sent) {
      if (!graph_.has_edge(from, to))
        throw SimError("message on non-existent channel " + std::to_string(from) + "->" +
                       std::to_string(to));
      auto key = std::make_pair(from, to);
      std::uint64_t seq = channel_seq_[key]++;
      Tick prev = channel_prev_deliver_.count(key) ? channel_prev_deliver_[key] : 0;
      Tick deliver;
      if (replaying_) {
        auto it = replay_times_.find({from, to, seq});
        if (it == replay_times_.end())
          throw SimError("replay divergence: unrecorded send " + std::to_string(from) + "->" +
                         std::to_string(to) + " seq " + std::to_string(seq));
        deliver = it->second;
      } else {
        deliver = delay_.deliver_at(from, to, seq, now, prev);
      }
      if (deliver <= now || deliver > now + kTicksPerUnit)
        throw SimError("delay model produced a delay outside (0, 1]");
      if (deliver < prev) throw SimError("delay model violated channel FIFO order");
      channel_prev_deliver_[key] = deliver;
      queue_.push(Envelope{deliver, to, from, seq, std::move(payload)});
    }
  }

  const Graph& graph_;
  DelayModel delay_;
  BitParams bits_;
  std::uint64_t budget_;
  std::map<NodeId, std::unique_ptr<NodeT>> nodes_;
  std::priority_queue<Envelope, std::vector<Envelope>, std::greater<>> queue_;
  std::map<std::pair<NodeId, NodeId>, std::uint64_t> channel_seq_;
  std::map<std::pair<NodeId, NodeId>, Tick> channel_prev_deliver_;
  std::map<std::tuple<NodeId, NodeId, std::uint64_t>, Tick> replay_times_;
  bool replaying_ = false;
  Metrics metrics_;
};

inline std::string ticks_to_units_str(Tick t) {
  Tick whole = t / kTicksPerUnit;
  Tick frac = t % kTicksPerUnit;
  std::string s = std::to_string(whole);
  if (frac != 0) {
    std::string f = std::to_string(frac);
    f.insert(f.begin(), 6 - f.size(), '0');
    while (!f.empty() && f.back() == '0') f.pop_back();
    s += "." + f;
  }
  return s;
}

}  // namespace mdst::sim
