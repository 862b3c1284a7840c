#include "mdst/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mdst {

namespace {

void check_connected(const std::vector<NodeId>& nodes,
                     const std::map<NodeId, std::vector<std::pair<NodeId, HalfUnit>>>& adj) {
  if (nodes.empty()) throw GraphError("graph has no nodes");
  std::set<NodeId> seen{nodes.front()};
  std::vector<NodeId> stack{nodes.front()};
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (const auto& [v, w] : adj.at(u)) {
      (void)w;
      if (seen.insert(v).second) stack.push_back(v);
    }
  }
  if (seen.size() != nodes.size()) throw GraphError("graph is disconnected");
}

}  // namespace

Graph Graph::make(std::vector<NodeId> nodes, std::vector<Edge> edges) {
  Graph g;
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
    throw GraphError("duplicate node id");
  for (NodeId id : nodes)
    if (id < 0) throw GraphError("node ids must be non-negative");
  g.nodes_ = std::move(nodes);

  for (auto& e : edges) {
    if (e.u == e.v) throw GraphError("self-loop on node " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.w <= kZero) throw GraphError("edge weight must be strictly positive");
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i - 1].u == edges[i].u && edges[i - 1].v == edges[i].v)
      throw GraphError("duplicate edge (" + std::to_string(edges[i].u) + "," +
                       std::to_string(edges[i].v) + ")");
  g.edges_ = std::move(edges);

  for (NodeId id : g.nodes_) g.adj_[id] = {};
  for (const Edge& e : g.edges_) {
    if (!g.adj_.count(e.u) || !g.adj_.count(e.v))
      throw GraphError("edge endpoint not in node set");
    g.adj_[e.u].push_back({e.v, e.w});
    g.adj_[e.v].push_back({e.u, e.w});
  }
  for (auto& [id, nbrs] : g.adj_) {
    (void)id;
    std::sort(nbrs.begin(), nbrs.end());
  }
  check_connected(g.nodes_, g.adj_);
  return g;
}

const std::vector<std::pair<NodeId, HalfUnit>>& Graph::neighbors(NodeId u) const {
  auto it = adj_.find(u);
  if (it == adj_.end()) throw GraphError("unknown node " + std::to_string(u));
  return it->second;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (!has_node(u)) return false;
  for (const auto& [n, w] : adj_.at(u)) {
    (void)w;
    if (n == v) return true;
  }
  return false;
}

HalfUnit Graph::weight(NodeId u, NodeId v) const {
  for (const auto& [n, w] : neighbors(u))
    if (n == v) return w;
  throw GraphError("no edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
}

std::int64_t Graph::max_weight_units() const {
  std::int64_t w = 1;
  for (const Edge& e : edges_) w = std::max(w, e.w.whole());
  return w;
}

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::int64_t n = 0, m = 0;
  if (!(in >> n >> m)) throw GraphError("missing or malformed header line");
  if (n < 1) throw GraphError("node count must be at least 1");
  if (m < 0) throw GraphError("negative edge count");

  std::vector<Edge> edges;
  std::set<NodeId> ids;
  for (std::int64_t i = 0; i < m; ++i) {
    std::int64_t u, v, w;
    if (!(in >> u >> v >> w))
      throw GraphError("malformed edge line " + std::to_string(i + 1));
    if (w <= 0) throw GraphError("non-positive weight on edge line " + std::to_string(i + 1));
    edges.push_back(Edge{u, v, HalfUnit::from_weight(w)});
    ids.insert(u);
    ids.insert(v);
  }

  if (n == 1 && m == 0) {
    std::int64_t id = 1;
    in >> id;  // optional id line
    ids.insert(id);
  }

  std::int64_t trailing;
  if (in >> trailing) throw GraphError("trailing tokens after edge list");

  if (static_cast<std::int64_t>(ids.size()) != n)
    throw GraphError("header declares " + std::to_string(n) + " nodes but edges mention " +
                     std::to_string(ids.size()));
  return Graph::make(std::vector<NodeId>(ids.begin(), ids.end()), std::move(edges));
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges())
    out << e.u << ' ' << e.v << ' ' << e.w.whole() << '\n';
  if (g.node_count() == 1 && g.edge_count() == 0 && g.min_node_id() != 1)
    out << g.min_node_id() << '\n';
  return out.str();
}

GraphFamily parse_family(std::string_view name) {
  if (name == "line") return GraphFamily::Line;
  if (name == "ring") return GraphFamily::Ring;
  if (name == "complete") return GraphFamily::Complete;
  if (name == "random") return GraphFamily::Random;
  throw GraphError("unknown graph family: " + std::string(name));
}

Graph generate_graph(GraphFamily family, std::size_t n, WeightRange wr,
                     std::uint64_t seed, std::size_t max_extra_edges) {
  if (n == 0) throw GraphError("cannot generate a graph with zero nodes");
  if (wr.lo < 1 || wr.hi < wr.lo) throw GraphError("invalid weight range");
  Rng rng(mix_seed(seed, 0xabcdef12345ULL));
  auto pick_w = [&] { return HalfUnit::from_weight(rng.uniform(wr.lo, wr.hi)); };

  std::vector<NodeId> nodes;
  for (std::size_t i = 1; i <= n; ++i) nodes.push_back(static_cast<NodeId>(i));
  std::vector<Edge> edges;

  switch (family) {
    case GraphFamily::Line:
      for (std::size_t i = 1; i < n; ++i)
        edges.push_back(Edge{static_cast<NodeId>(i), static_cast<NodeId>(i + 1), pick_w()});
      break;
    case GraphFamily::Ring:
      if (n < 3) throw GraphError("ring needs at least 3 nodes");
      for (std::size_t i = 1; i < n; ++i)
        edges.push_back(Edge{static_cast<NodeId>(i), static_cast<NodeId>(i + 1), pick_w()});
      edges.push_back(Edge{1, static_cast<NodeId>(n), pick_w()});
      break;
    case GraphFamily::Complete:
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j)
          edges.push_back(Edge{static_cast<NodeId>(i), static_cast<NodeId>(j), pick_w()});
      break;
    case GraphFamily::Random: {
      std::set<std::pair<NodeId, NodeId>> present;
      for (std::size_t i = 2; i <= n; ++i) {
        NodeId u = static_cast<NodeId>(rng.uniform(1, static_cast<std::int64_t>(i) - 1));
        NodeId v = static_cast<NodeId>(i);
        edges.push_back(Edge{u, v, pick_w()});
        present.insert({u, v});
      }
      std::size_t max_m = n * (n - 1) / 2;
      std::size_t budget = std::min(max_extra_edges, max_m - (n - 1));
      std::size_t extra = n >= 2 ? static_cast<std::size_t>(
                                       rng.uniform(0, static_cast<std::int64_t>(budget)))
                                 : 0;
      std::size_t attempts = 0;
      while (extra > 0 && attempts < 20 * n + 100) {
        ++attempts;
        NodeId u = static_cast<NodeId>(rng.uniform(1, static_cast<std::int64_t>(n)));
        NodeId v = static_cast<NodeId>(rng.uniform(1, static_cast<std::int64_t>(n)));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (!present.insert({u, v}).second) continue;
        edges.push_back(Edge{u, v, pick_w()});
        --extra;
      }
      break;
    }
  }
  return Graph::make(std::move(nodes), std::move(edges));
}

}  // namespace mdst
