#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mdst/halfunit.hpp"

namespace mdst {

using NodeId = std::int64_t;

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Canonical undirected edge, smaller endpoint first.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  HalfUnit w;
  auto operator<=>(const Edge&) const = default;
};

// Undirected, connected, positively weighted graph with distinct
// non-negative integer node ids. Construction validates everything;
// instances are immutable afterwards.
class Graph {
 public:
  static Graph make(std::vector<NodeId> nodes, std::vector<Edge> edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<NodeId>& nodes() const { return nodes_; }      // sorted
  const std::vector<Edge>& edges() const { return edges_; }        // sorted
  // Sorted by neighbor id.
  const std::vector<std::pair<NodeId, HalfUnit>>& neighbors(NodeId u) const;

  bool has_node(NodeId u) const { return adj_.count(u) != 0; }
  bool has_edge(NodeId u, NodeId v) const;
  HalfUnit weight(NodeId u, NodeId v) const;

  NodeId min_node_id() const { return nodes_.front(); }
  std::int64_t max_weight_units() const;

 private:
  std::vector<NodeId> nodes_;
  std::vector<Edge> edges_;
  std::map<NodeId, std::vector<std::pair<NodeId, HalfUnit>>> adj_;
};

// Edge-list text format: first line "n m", then m lines "u v w" with
// integer ids and strictly positive integer weights. A single isolated
// node ("1 0") may carry its id on one extra line; it defaults to 1.
Graph parse_graph(std::string_view text);

// Canonical form: edges sorted by (u, v); parse(serialize(g)) == g.
std::string serialize_graph(const Graph& g);

enum class GraphFamily { Line, Ring, Complete, Random };

struct WeightRange {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
};

GraphFamily parse_family(std::string_view name);

// Deterministic for a fixed seed. Random family builds a random spanning
// tree first, then sprinkles extra edges, so connectivity never needs a
// retry loop.
Graph generate_graph(GraphFamily family, std::size_t n, WeightRange wr,
                     std::uint64_t seed, std::size_t max_extra_edges = 18);

// Small deterministic PRNG (splitmix64) used by the generator and the
// delay model. Self-contained so streams are identical on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [lo, hi]; modulo bias is irrelevant at these ranges.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
 private:
  std::uint64_t state_;
};

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  Rng r(a ^ (b * 0x9e3779b97f4a7c15ULL) ^ 0x5851f42d4c957f2dULL);
  return r.next();
}

}  // namespace mdst
