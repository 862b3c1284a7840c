#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mdst/general_node.hpp"
#include "mdst/graph.hpp"
#include "mdst/halfunit.hpp"

namespace mdst {

// Exact all-pairs shortest path distances, dense.
class DistMatrix {
 public:
  DistMatrix() = default;
  DistMatrix(std::vector<NodeId> ids, std::vector<HalfUnit> data);

  HalfUnit at(NodeId u, NodeId v) const;
  std::map<NodeId, HalfUnit> row(NodeId u) const;
  const std::vector<NodeId>& ids() const { return ids_; }

 private:
  std::size_t index(NodeId u) const;
  std::vector<NodeId> ids_;
  std::map<NodeId, std::size_t> idx_;
  std::vector<HalfUnit> d_;
};

// Floyd-Warshall; chosen for independence from the distributed
// relaxation logic it is used to verify.
DistMatrix apsp_sequential(const Graph& g);

struct EccentricityInfo {
  std::map<NodeId, HalfUnit> ecc;
  HalfUnit diameter;
  HalfUnit radius;
  NodeId min_node_id = 0;   // smallest id in V, root of the dissemination tree
  NodeId radius_node = 0;   // smallest id attaining the radius
};

EccentricityInfo eccentricities(const Graph& g, const DistMatrix& d);

// Pointwise max over all vertices z of min(alpha + d(u,z), w - alpha + d(v,z)):
// the eccentricity of the point at offset alpha inside edge (u,v).
HalfUnit upper_boundary_value(const Graph& g, const DistMatrix& d, const Edge& e,
                              HalfUnit alpha);

// One (d(u,z), d(v,z)) pair per vertex, reduced and ordered.
using DistancePair = std::pair<HalfUnit, HalfUnit>;

// Drops every pair componentwise covered by another, removes duplicates
// and sorts descending on the first coordinate. The result has strictly
// decreasing first and strictly increasing second coordinates, and the
// max-min envelope over it equals the envelope over the full pair set.
std::vector<DistancePair> build_dominating_list(const std::map<NodeId, HalfUnit>& row_u,
                                                const std::map<NodeId, HalfUnit>& row_v);
std::vector<DistancePair> build_dominating_list(const Graph& g, const DistMatrix& d,
                                                const Edge& e);

struct EdgeCenter {
  HalfUnit alpha;
  HalfUnit value;
};

// Minimum of the upper boundary over one edge: the left endpoint plus the
// crossings of consecutive descending/ascending segments. Ties prefer the
// smallest alpha. The right endpoint is intentionally not probed; it is a
// real vertex and enters the global candidate order on its own.
EdgeCenter edge_local_center(HalfUnit edge_w, const std::vector<DistancePair>& list);

struct CenterResult {
  GeneralNode node;
  HalfUnit value;  // eccentricity of the winner
  CenterKey key() const { return center_key(node, value); }
};

// Global minimum over all vertices and all edge-interior local centers,
// ties broken by CenterKey.
CenterResult absolute_center(const Graph& g);
CenterResult absolute_center(const Graph& g, const DistMatrix& d);

// Same answer obtained without any domination filtering: every pairwise
// segment crossing of every edge is probed directly on the envelope.
CenterResult brute_force_center(const Graph& g);

// Spanning tree as a parent map. A node without a parent attaches to the
// root: the root itself when real, or a half-edge of the rooted edge when
// the root is interior (both endpoints then attach).
struct Tree {
  GeneralNode root;
  std::map<NodeId, std::optional<NodeId>> parent;
};

// Shortest paths tree rooted at any general node; each node's parent is the
// smallest-id neighbor lying on a shortest path to the root.
Tree shortest_path_tree(const Graph& g, const DistMatrix& d, const GeneralNode& root);

// Distance from the root to every node inside the tree (equals graph
// distance for trees produced by shortest_path_tree).
std::map<NodeId, HalfUnit> tree_distances_from_root(const Tree& t, const Graph& g);

std::set<std::pair<NodeId, NodeId>> tree_edge_set(const Tree& t);

HalfUnit tree_diameter(const Tree& t, const Graph& g);

std::pair<Tree, CenterResult> mdst_sequential(const Graph& g);

// Exhaustive minimum over all spanning trees; guarded to small graphs.
HalfUnit min_diameter_by_enumeration(const Graph& g, std::size_t max_n = 8,
                                     std::size_t max_m = 14);

std::string tree_to_dot(const Tree& t, const Graph& g);
std::string tree_to_json(const Tree& t);

}  // namespace mdst
