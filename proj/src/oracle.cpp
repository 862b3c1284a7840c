#include "mdst/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mdst {

namespace {
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
}

DistMatrix::DistMatrix(std::vector<NodeId> ids, std::vector<HalfUnit> data)
    : ids_(std::move(ids)), d_(std::move(data)) {
  for (std::size_t i = 0; i < ids_.size(); ++i) idx_[ids_[i]] = i;
}

std::size_t DistMatrix::index(NodeId u) const {
  auto it = idx_.find(u);
  if (it == idx_.end()) throw std::out_of_range("DistMatrix: unknown node");
  return it->second;
}

HalfUnit DistMatrix::at(NodeId u, NodeId v) const {
  return d_[index(u) * ids_.size() + index(v)];
}

std::map<NodeId, HalfUnit> DistMatrix::row(NodeId u) const {
  std::map<NodeId, HalfUnit> r;
  std::size_t i = index(u);
  for (std::size_t j = 0; j < ids_.size(); ++j) r[ids_[j]] = d_[i * ids_.size() + j];
  return r;
}

DistMatrix apsp_sequential(const Graph& g) {
  const auto& ids = g.nodes();
  std::size_t n = ids.size();
  std::map<NodeId, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx[ids[i]] = i;

  std::vector<std::int64_t> d(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0;
  for (const Edge& e : g.edges()) {
    std::size_t a = idx[e.u], b = idx[e.v];
    d[a * n + b] = std::min(d[a * n + b], e.w.halves());
    d[b * n + a] = d[a * n + b];
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i * n + k] == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (d[k * n + j] == kInf) continue;
        std::int64_t via = d[i * n + k] + d[k * n + j];
        if (via < d[i * n + j]) d[i * n + j] = via;
      }
    }

  std::vector<HalfUnit> out(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    if (d[i] == kInf) throw GraphError("apsp on disconnected graph");
    out[i] = HalfUnit::from_halves(d[i]);
  }
  return DistMatrix(ids, std::move(out));
}

EccentricityInfo eccentricities(const Graph& g, const DistMatrix& d) {
  EccentricityInfo info;
  info.min_node_id = g.min_node_id();
  bool first = true;
  for (NodeId u : g.nodes()) {
    HalfUnit e = kZero;
    for (NodeId v : g.nodes()) e = max(e, d.at(u, v));
    info.ecc[u] = e;
    if (first || e > info.diameter) info.diameter = e;
    if (first || e < info.radius) {
      info.radius = e;
      info.radius_node = u;
    }
    first = false;
  }
  return info;
}

HalfUnit upper_boundary_value(const Graph& g, const DistMatrix& d, const Edge& e,
                              HalfUnit alpha) {
  if (alpha < kZero || alpha > e.w)
    throw std::invalid_argument("upper_boundary_value: alpha outside [0, w]");
  HalfUnit best = kZero;
  bool first = true;
  for (NodeId z : g.nodes()) {
    HalfUnit f = min(alpha + d.at(e.u, z), (e.w - alpha) + d.at(e.v, z));
    if (first || f > best) best = f;
    first = false;
  }
  return best;
}

std::vector<DistancePair> build_dominating_list(const std::map<NodeId, HalfUnit>& row_u,
                                                const std::map<NodeId, HalfUnit>& row_v) {
  if (row_u.size() != row_v.size())
    throw std::invalid_argument("dominating list: row size mismatch");
  std::set<DistancePair> uniq;
  for (const auto& [z, du] : row_u) {
    auto it = row_v.find(z);
    if (it == row_v.end()) throw std::invalid_argument("dominating list: row key mismatch");
    uniq.insert({du, it->second});
  }
  std::vector<DistancePair> pairs(uniq.begin(), uniq.end());
  std::vector<DistancePair> kept;
  for (const auto& p : pairs) {
    bool dominated = false;
    for (const auto& q : pairs) {
      if (q == p) continue;
      if (p.first <= q.first && p.second <= q.second) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end(),
            [](const DistancePair& a, const DistancePair& b) { return a.first > b.first; });
  for (std::size_t i = 1; i < kept.size(); ++i) {
    if (!(kept[i - 1].first > kept[i].first) || !(kept[i - 1].second < kept[i].second))
      throw std::logic_error("dominating list lost its staircase shape");
  }
  return kept;
}

std::vector<DistancePair> build_dominating_list(const Graph& g, const DistMatrix& d,
                                                const Edge& e) {
  return build_dominating_list(d.row(e.u), d.row(e.v));
}

EdgeCenter edge_local_center(HalfUnit edge_w, const std::vector<DistancePair>& list) {
  if (list.empty()) throw std::invalid_argument("edge_local_center: empty list");
  HalfUnit best_val = list.front().first;  // envelope value at alpha = 0
  HalfUnit best_alpha = kZero;
  for (std::size_t i = 0; i + 1 < list.size(); ++i) {
    HalfUnit x = (edge_w - list[i + 1].first + list[i].second).half();
    HalfUnit y = (edge_w + list[i + 1].first + list[i].second).half();
    if (x <= kZero || x >= edge_w)
      throw std::logic_error("segment crossing fell outside the open edge interval");
    if (y < best_val) {
      best_val = y;
      best_alpha = x;
    }
  }
  return EdgeCenter{best_alpha, best_val};
}

namespace {

GeneralNode candidate_to_node(const Graph& g, NodeId u, NodeId v, HalfUnit alpha) {
  if (alpha == kZero) return GeneralNode::real(u);
  if (alpha == g.weight(u, v)) return GeneralNode::real(v);
  return GeneralNode::interior(u, v, alpha);
}

}  // namespace

CenterResult absolute_center(const Graph& g) { return absolute_center(g, apsp_sequential(g)); }

CenterResult absolute_center(const Graph& g, const DistMatrix& d) {
  auto ecc = eccentricities(g, d);
  bool have = false;
  CenterKey best_key{};
  GeneralNode best_node;
  for (NodeId u : g.nodes()) {
    CenterKey k{ecc.ecc.at(u), u, u, kZero};
    if (!have || k < best_key) {
      best_key = k;
      best_node = GeneralNode::real(u);
      have = true;
    }
  }
  for (const Edge& e : g.edges()) {
    auto lc = edge_local_center(e.w, build_dominating_list(g, d, e));
    GeneralNode n = candidate_to_node(g, e.u, e.v, lc.alpha);
    CenterKey k = center_key(n, lc.value);
    if (k < best_key) {
      best_key = k;
      best_node = n;
    }
  }
  return CenterResult{best_node, best_key.value};
}

CenterResult brute_force_center(const Graph& g) {
  DistMatrix d = apsp_sequential(g);
  auto ecc = eccentricities(g, d);
  bool have = false;
  CenterKey best_key{};
  GeneralNode best_node;
  auto consider = [&](const GeneralNode& n, HalfUnit value) {
    CenterKey k = center_key(n, value);
    if (!have || k < best_key) {
      best_key = k;
      best_node = n;
      have = true;
    }
  };
  for (NodeId u : g.nodes()) consider(GeneralNode::real(u), ecc.ecc.at(u));
  for (const Edge& e : g.edges()) {
    std::set<HalfUnit> alphas{kZero, e.w};
    for (NodeId z1 : g.nodes()) {
      for (NodeId z2 : g.nodes()) {
        // Crossing of the ascending segment of z1 with the descending one of z2.
        HalfUnit x = (e.w - d.at(e.u, z1) + d.at(e.v, z2)).half();
        if (x < kZero) x = kZero;
        if (x > e.w) x = e.w;
        alphas.insert(x);
      }
    }
    for (HalfUnit a : alphas) {
      HalfUnit val = upper_boundary_value(g, d, e, a);
      consider(candidate_to_node(g, e.u, e.v, a), val);
    }
  }
  return CenterResult{best_node, best_key.value};
}

namespace {

std::map<NodeId, HalfUnit> distances_from_general(const Graph& g, const DistMatrix& d,
                                                  const GeneralNode& root) {
  std::map<NodeId, HalfUnit> out;
  for (NodeId z : g.nodes()) {
    if (root.is_real()) {
      out[z] = d.at(root.id1, z);
    } else {
      HalfUnit w = g.weight(root.id1, root.id2);
      out[z] = min(root.alpha + d.at(root.id1, z), (w - root.alpha) + d.at(root.id2, z));
    }
  }
  return out;
}

}  // namespace

Tree shortest_path_tree(const Graph& g, const DistMatrix& d, const GeneralNode& root) {
  if (!root.is_real() && !g.has_edge(root.id1, root.id2))
    throw GraphError("tree root edge does not exist");
  auto dr = distances_from_general(g, d, root);
  Tree t;
  t.root = root;
  for (NodeId v : g.nodes()) {
    if (root.is_real() && v == root.id1) {
      t.parent[v] = std::nullopt;
      continue;
    }
    if (!root.is_real() && (v == root.id1 || v == root.id2)) {
      t.parent[v] = std::nullopt;
      continue;
    }
    std::optional<NodeId> parent;
    for (const auto& [z, w] : g.neighbors(v)) {
      if (dr.at(v) == w + dr.at(z)) {
        parent = z;
        break;  // neighbors sorted: first feasible is the smallest id
      }
    }
    if (!parent) throw std::logic_error("no shortest-path parent found");
    t.parent[v] = parent;
  }
  return t;
}

std::set<std::pair<NodeId, NodeId>> tree_edge_set(const Tree& t) {
  std::set<std::pair<NodeId, NodeId>> edges;
  for (const auto& [v, p] : t.parent)
    if (p) edges.insert({std::min(v, *p), std::max(v, *p)});
  if (!t.root.is_real()) edges.insert({t.root.id1, t.root.id2});
  return edges;
}

std::map<NodeId, HalfUnit> tree_distances_from_root(const Tree& t, const Graph& g) {
  std::map<NodeId, HalfUnit> out;
  for (const auto& [v, p] : t.parent) {
    (void)p;
    HalfUnit total = kZero;
    NodeId cur = v;
    std::size_t guard = 0;
    while (true) {
      if (++guard > t.parent.size() + 1) throw std::logic_error("parent map has a cycle");
      const auto& par = t.parent.at(cur);
      if (!par) {
        if (!t.root.is_real()) {
          HalfUnit w = g.weight(t.root.id1, t.root.id2);
          total += cur == t.root.id1 ? t.root.alpha : w - t.root.alpha;
        }
        break;
      }
      total += g.weight(cur, *par);
      cur = *par;
    }
    out[v] = total;
  }
  return out;
}

HalfUnit tree_diameter(const Tree& t, const Graph& g) {
  auto edges = tree_edge_set(t);
  std::map<NodeId, std::vector<std::pair<NodeId, HalfUnit>>> adj;
  for (const auto& [v, p] : t.parent) {
    (void)p;
    adj[v] = {};
  }
  for (const auto& [a, b] : edges) {
    HalfUnit w = g.weight(a, b);
    adj[a].push_back({b, w});
    adj[b].push_back({a, w});
  }
  HalfUnit best = kZero;
  for (const auto& [start, nbrs] : adj) {
    (void)nbrs;
    std::vector<std::pair<NodeId, HalfUnit>> stack{{start, kZero}};
    std::set<NodeId> seen{start};
    while (!stack.empty()) {
      auto [u, dist] = stack.back();
      stack.pop_back();
      best = max(best, dist);
      for (const auto& [v, w] : adj.at(u))
        if (seen.insert(v).second) stack.push_back({v, dist + w});
    }
  }
  return best;
}

std::pair<Tree, CenterResult> mdst_sequential(const Graph& g) {
  DistMatrix d = apsp_sequential(g);
  CenterResult c = absolute_center(g, d);
  return {shortest_path_tree(g, d, c.node), c};
}

namespace {

struct UnionFind {
  std::map<NodeId, NodeId> parent;
  NodeId find(NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

HalfUnit min_diameter_by_enumeration(const Graph& g, std::size_t max_n, std::size_t max_m) {
  std::size_t n = g.node_count(), m = g.edge_count();
  if (n > max_n || m > max_m)
    throw std::invalid_argument("enumeration guard exceeded (n <= " + std::to_string(max_n) +
                                ", m <= " + std::to_string(max_m) + ")");
  if (n == 1) return kZero;
  const auto& edges = g.edges();
  bool have = false;
  HalfUnit best = kZero;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != n - 1) continue;
    UnionFind uf;
    for (NodeId v : g.nodes()) uf.parent[v] = v;
    std::size_t joined = 0;
    std::map<NodeId, std::vector<std::pair<NodeId, HalfUnit>>> adj;
    for (NodeId v : g.nodes()) adj[v] = {};
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask & (1u << i))) continue;
      if (uf.unite(edges[i].u, edges[i].v)) ++joined;
      adj[edges[i].u].push_back({edges[i].v, edges[i].w});
      adj[edges[i].v].push_back({edges[i].u, edges[i].w});
    }
    if (joined != n - 1) continue;  // not spanning
    HalfUnit diam = kZero;
    for (const auto& [start, nbrs] : adj) {
      (void)nbrs;
      std::vector<std::pair<NodeId, HalfUnit>> stack{{start, kZero}};
      std::set<NodeId> seen{start};
      while (!stack.empty()) {
        auto [u, dist] = stack.back();
        stack.pop_back();
        diam = max(diam, dist);
        for (const auto& [v, w] : adj.at(u))
          if (seen.insert(v).second) stack.push_back({v, dist + w});
      }
    }
    if (!have || diam < best) {
      best = diam;
      have = true;
    }
  }
  if (!have) throw std::logic_error("no spanning tree found on a connected graph");
  return best;
}

}  // namespace mdst
