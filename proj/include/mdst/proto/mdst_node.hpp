#pragma once

#include <map>
#include <optional>

#include "mdst/proto/apsp.hpp"

namespace mdst::proto {

// Layers the center search on top of the routing node: a pruned scan of the
// adjacent owned edges, a candidate convergecast over the tree rooted at the
// smallest id, the winner broadcast, and the choice of this node's parent on
// the route toward the winning center.
class MdstNode {
 public:
  struct Options {
    bool prune = true;  // stop scanning once the bound reaches half the diameter
  };

  MdstNode(NodeId id, std::vector<std::pair<NodeId, HalfUnit>> neighbors, Options opt);
  MdstNode(NodeId id, std::vector<std::pair<NodeId, HalfUnit>> neighbors)
      : MdstNode(id, std::move(neighbors), Options()) {}

  void on_init(Out& out);
  void on_message(NodeId from, const Message& m, Out& out);
  std::size_t state_entries() const { return apsp_.state_entries(); }

  const ApspNode& routing() const { return apsp_; }
  bool done() const { return done_; }
  const CenterCandidate& center() const;
  HalfUnit center_edge_weight() const { return center_w_; }
  bool at_center() const { return at_center_; }
  std::optional<NodeId> mdst_parent() const { return mdst_parent_; }
  HalfUnit distance_to_center() const { return d_center_; }

 private:
  void on_globals(Out& out);
  void local_center_scan();
  void maybe_send_candidate(Out& out);
  void on_candidate_up(NodeId from, const CandidateUpMsg& m, Out& out);
  void on_candidate_down(NodeId from, const CandidateDownMsg& m, Out& out);
  void attach_to_center();

  ApspNode apsp_;
  Options opt_;

  bool scan_done_ = false;
  CenterCandidate own_cand_;
  HalfUnit own_cand_w_;
  std::map<NodeId, CandidateUpMsg> cand_reports_;
  bool cand_sent_ = false;

  bool have_center_ = false;
  CenterCandidate center_;
  HalfUnit center_w_;

  bool done_ = false;
  std::optional<NodeId> mdst_parent_;  // nullopt while not done, or attached to center
  bool at_center_ = false;
  HalfUnit d_center_;
};

}  // namespace mdst::proto
