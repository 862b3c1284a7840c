#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>

#include "mdst/general_node.hpp"
#include "mdst/graph.hpp"
#include "mdst/halfunit.hpp"

namespace mdst::proto {

// Routing phase: one (destination, distance) announcement per round.
struct UpdateMsg {
  NodeId sender = 0;
  NodeId selected = 0;
  HalfUnit distance;
};

// Channel closure marker; exactly one per ordered channel, always the last
// routing-phase message on it.
struct InactiveMsg {};

// Row reconciliation entry: carries a table improvement across a channel
// whose routing traffic has already closed, plus the final-row sweep sent
// at local termination.
struct RowSyncMsg {
  NodeId sender = 0;
  NodeId selected = 0;
  HalfUnit distance;
};

// Per-channel flush marker following the sender's terminal row sweep; the
// receiver defers its tree bookkeeping until every neighbor flushed.
struct RowDoneMsg {};

// "You are (not) my parent on the tree toward the smallest id."
struct ParentNotifyMsg {
  bool is_parent = false;
};

// Leaves-to-root aggregation of subtree eccentricity extremes.
struct EccUpMsg {
  HalfUnit max_ecc;
  HalfUnit min_ecc;
  NodeId argmin_id = 0;
};

// Root-to-leaves dissemination of the graph diameter and radius.
struct GlobalsDownMsg {
  HalfUnit diameter;
  HalfUnit radius;
};

// A center candidate: a real vertex (id1 == id2, alpha == 0) or a point at
// offset alpha inside edge (id1, id2); bound is its eccentricity.
struct CenterCandidate {
  HalfUnit alpha;
  HalfUnit bound;
  NodeId id1 = 0;
  NodeId id2 = 0;

  CenterKey key() const { return CenterKey{bound, id1, id2, alpha}; }
  bool operator==(const CenterCandidate&) const = default;

  GeneralNode to_general_node() const {
    if (id1 == id2) return GeneralNode::real(id1);
    return GeneralNode::interior(id1, id2, alpha);
  }
};

// Candidate aggregation toward the root and the final broadcast back down.
// Both carry the candidate edge's weight (zero for a real vertex); receivers
// need it to price routes toward an interior center on a remote edge.
struct CandidateUpMsg {
  CenterCandidate cand;
  HalfUnit edge_weight;
};

struct CandidateDownMsg {
  CenterCandidate cand;
  HalfUnit edge_weight;
};

using Message = std::variant<UpdateMsg, InactiveMsg, RowSyncMsg, RowDoneMsg, ParentNotifyMsg,
                             EccUpMsg, GlobalsDownMsg, CandidateUpMsg, CandidateDownMsg>;

inline std::string message_kind(const Message& m) {
  struct V {
    std::string operator()(const UpdateMsg&) const { return "Update"; }
    std::string operator()(const InactiveMsg&) const { return "Inactive"; }
    std::string operator()(const RowSyncMsg&) const { return "RowSync"; }
    std::string operator()(const RowDoneMsg&) const { return "RowDone"; }
    std::string operator()(const ParentNotifyMsg&) const { return "ParentNotify"; }
    std::string operator()(const EccUpMsg&) const { return "EccUp"; }
    std::string operator()(const GlobalsDownMsg&) const { return "GlobalsDown"; }
    std::string operator()(const CandidateUpMsg&) const { return "CandidateUp"; }
    std::string operator()(const CandidateDownMsg&) const { return "CandidateDown"; }
  };
  return std::visit(V{}, m);
}

// (node-id fields, distance fields) for bit accounting.
inline std::pair<int, int> message_fields(const Message& m) {
  struct V {
    std::pair<int, int> operator()(const UpdateMsg&) const { return {2, 1}; }
    std::pair<int, int> operator()(const InactiveMsg&) const { return {0, 0}; }
    std::pair<int, int> operator()(const RowSyncMsg&) const { return {2, 1}; }
    std::pair<int, int> operator()(const RowDoneMsg&) const { return {0, 0}; }
    std::pair<int, int> operator()(const ParentNotifyMsg&) const { return {0, 0}; }
    std::pair<int, int> operator()(const EccUpMsg&) const { return {1, 2}; }
    std::pair<int, int> operator()(const GlobalsDownMsg&) const { return {0, 2}; }
    std::pair<int, int> operator()(const CandidateUpMsg&) const { return {2, 3}; }
    std::pair<int, int> operator()(const CandidateDownMsg&) const { return {2, 3}; }
  };
  return std::visit(V{}, m);
}

namespace detail {
inline std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
  return h;
}
}  // namespace detail

inline std::uint64_t message_digest(const Message& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = detail::fnv1a(h, static_cast<std::uint64_t>(m.index()));
  struct V {
    std::uint64_t& h;
    void operator()(const UpdateMsg& x) const {
      h = detail::fnv1a(h, x.sender);
      h = detail::fnv1a(h, x.selected);
      h = detail::fnv1a(h, x.distance.halves());
    }
    void operator()(const InactiveMsg&) const {}
    void operator()(const RowSyncMsg& x) const {
      h = detail::fnv1a(h, x.sender);
      h = detail::fnv1a(h, x.selected);
      h = detail::fnv1a(h, x.distance.halves());
    }
    void operator()(const RowDoneMsg&) const {}
    void operator()(const ParentNotifyMsg& x) const { h = detail::fnv1a(h, x.is_parent); }
    void operator()(const EccUpMsg& x) const {
      h = detail::fnv1a(h, x.max_ecc.halves());
      h = detail::fnv1a(h, x.min_ecc.halves());
      h = detail::fnv1a(h, x.argmin_id);
    }
    void operator()(const GlobalsDownMsg& x) const {
      h = detail::fnv1a(h, x.diameter.halves());
      h = detail::fnv1a(h, x.radius.halves());
    }
    void operator()(const CandidateUpMsg& x) const {
      h = detail::fnv1a(h, x.cand.alpha.halves());
      h = detail::fnv1a(h, x.cand.bound.halves());
      h = detail::fnv1a(h, x.cand.id1);
      h = detail::fnv1a(h, x.cand.id2);
      h = detail::fnv1a(h, x.edge_weight.halves());
    }
    void operator()(const CandidateDownMsg& x) const {
      h = detail::fnv1a(h, x.cand.alpha.halves());
      h = detail::fnv1a(h, x.cand.bound.halves());
      h = detail::fnv1a(h, x.cand.id1);
      h = detail::fnv1a(h, x.cand.id2);
      h = detail::fnv1a(h, x.edge_weight.halves());
    }
  };
  std::visit(V{h}, m);
  return h;
}

}  // namespace mdst::proto
