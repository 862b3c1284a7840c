#pragma once

#include <stdexcept>
#include <string>

#include "mdst/graph.hpp"
#include "mdst/halfunit.hpp"

namespace mdst {

// A point of the metric graph: either a real vertex or a point strictly
// inside an edge, at offset alpha from the smaller endpoint.
struct GeneralNode {
  NodeId id1 = 0;
  NodeId id2 = 0;
  HalfUnit alpha;  // 0 for real vertices

  static GeneralNode real(NodeId id) { return GeneralNode{id, id, kZero}; }
  static GeneralNode interior(NodeId a, NodeId b, HalfUnit alpha) {
    if (a >= b) throw std::logic_error("interior point endpoints must satisfy id1 < id2");
    return GeneralNode{a, b, alpha};
  }

  bool is_real() const { return id1 == id2; }
  auto operator<=>(const GeneralNode&) const = default;

  std::string str() const {
    if (is_real()) return "node " + std::to_string(id1);
    return "edge (" + std::to_string(id1) + "," + std::to_string(id2) + ") at " +
           alpha.str();
  }
};

// Total order used everywhere a tie between center candidates must be
// broken: ascending on (value, id1, id2, alpha). A real vertex u of
// eccentricity e sorts as (e, u, u, 0). Making this a single shared key
// keeps the sequential and the distributed computation bit-identical.
struct CenterKey {
  HalfUnit value;
  NodeId id1 = 0;
  NodeId id2 = 0;
  HalfUnit alpha;
  auto operator<=>(const CenterKey&) const = default;
};

inline CenterKey center_key(const GeneralNode& n, HalfUnit value) {
  return CenterKey{value, n.id1, n.id2, n.alpha};
}

}  // namespace mdst
