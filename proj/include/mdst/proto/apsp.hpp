#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "mdst/proto/messages.hpp"
#include "mdst/sim/engine.hpp"

namespace mdst::proto {

struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Out = sim::Outbox<Message>;

// Per-node state machine for the distance-vector phase and the follow-up
// tree bookkeeping: parent discovery toward the smallest id, eccentricity
// aggregation to that root, and the diameter/radius broadcast back down.
//
// A node knows only its own id and its adjacent edge weights; nothing about
// the size of the network is ever assumed.
//
// Round structure: announce one (destination, distance) entry to every
// neighbor whose channel is still open, then wait for one message from each
// neighbor not yet known inactive (messages racing ahead of the round are
// banked for the next one). A closure marker arriving mid-round waives that
// neighbor's slot. When the pending set empties, the node goes inactive:
// channels to neighbors it still believes active close right away, the rest
// stay open for forwarded improvements and close once every incoming channel
// has closed, which is also the moment the node terminates the routing phase.
//
// Every table improvement is pushed to every neighbor immediately: as a
// round announcement while active, as a forwarded update on open channels
// while inactive, and as a row-sync entry on channels already closed. After
// the terminal row sweep a per-channel flush marker lets each receiver delay
// its tree bookkeeping until no neighbor has reconciliation in flight.
class ApspNode {
 public:
  ApspNode(NodeId id, std::vector<std::pair<NodeId, HalfUnit>> neighbors);

  // Invoked with the outbox of the event that made the globals known.
  std::function<void(Out&)> on_globals_ready;

  void on_init(Out& out);
  // Returns false if the message kind belongs to a later layer.
  bool handle(NodeId from, const Message& m, Out& out);

  // --- observers ---
  NodeId id() const { return id_; }
  const std::vector<std::pair<NodeId, HalfUnit>>& neighbors() const { return neighbors_; }
  HalfUnit weight_to(NodeId v) const;
  bool started() const { return started_; }
  bool inactive() const { return inactive_; }
  bool terminated() const { return terminated_; }
  bool globals_known() const { return globals_known_; }
  const std::map<NodeId, HalfUnit>& dist() const { return dist_; }
  const std::map<NodeId, std::map<NodeId, HalfUnit>>& neighbor_rows() const { return copies_; }
  const std::set<NodeId>& children() const { return children_; }
  std::optional<NodeId> parent_to_root() const { return parent_; }
  NodeId root_id() const { return u_min_; }
  HalfUnit diameter() const { return diameter_; }
  HalfUnit radius() const { return radius_; }
  HalfUnit own_ecc() const { return own_ecc_; }
  std::size_t state_entries() const;

 private:
  void on_update(NodeId from, const UpdateMsg& m, Out& out);
  void on_inactive(NodeId from, Out& out);
  void on_row_sync(NodeId from, const RowSyncMsg& m, Out& out);
  void on_row_done(NodeId from, Out& out);
  void on_parent_notify(NodeId from, const ParentNotifyMsg& m, Out& out);
  void on_ecc_up(NodeId from, const EccUpMsg& m, Out& out);
  void on_globals_down(NodeId from, const GlobalsDownMsg& m, Out& out);

  // Returns true when the relaxation strictly improved the table.
  bool relax(NodeId via, NodeId selected, HalfUnit announced);
  void push_improvement(NodeId selected, Out& out);
  void announce(NodeId selected, Out& out);
  void start_round();
  void end_of_round(Out& out);
  void check_all_in(Out& out);
  void finish_routing(Out& out);
  void maybe_anchor_tree(Out& out);
  void maybe_children_ready(Out& out);
  void maybe_finish_ecc(Out& out);

  NodeId id_;
  std::vector<std::pair<NodeId, HalfUnit>> neighbors_;  // sorted by id

  bool started_ = false;
  bool inactive_ = false;
  bool terminated_ = false;

  std::map<NodeId, HalfUnit> dist_;
  std::map<NodeId, NodeId> next_hop_;
  std::map<NodeId, std::map<NodeId, HalfUnit>> copies_;     // neighbor id -> its row
  std::map<NodeId, std::map<NodeId, HalfUnit>> announced_;  // per channel, values sent
  std::set<NodeId> update_set_;
  std::set<NodeId> round_pending_;      // who still owes this round a message
  std::map<NodeId, int> banked_;        // messages that ran ahead of their round
  std::set<NodeId> inactive_in_;
  std::set<NodeId> inactive_out_;

  std::set<NodeId> row_done_in_;
  bool tree_anchored_ = false;  // u_min/parent fixed, claims sent, table frozen

  NodeId u_min_ = -1;
  std::optional<NodeId> parent_;
  std::set<NodeId> notify_recv_;
  std::set<NodeId> children_;
  bool children_ready_ = false;
  HalfUnit own_ecc_;
  std::map<NodeId, EccUpMsg> ecc_reports_;
  bool ecc_done_ = false;
  bool globals_known_ = false;
  HalfUnit diameter_;
  HalfUnit radius_;
};

}  // namespace mdst::proto
