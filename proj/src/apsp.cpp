#include "mdst/proto/apsp.hpp"

#include <algorithm>

namespace mdst::proto {

namespace {
void require(bool cond, const char* what) {
  if (!cond) throw ProtocolError(what);
}
}  // namespace

ApspNode::ApspNode(NodeId id, std::vector<std::pair<NodeId, HalfUnit>> neighbors)
    : id_(id), neighbors_(std::move(neighbors)) {
  std::sort(neighbors_.begin(), neighbors_.end());
}

HalfUnit ApspNode::weight_to(NodeId v) const {
  for (const auto& [n, w] : neighbors_)
    if (n == v) return w;
  throw ProtocolError("message from a non-neighbor");
}

void ApspNode::on_init(Out& out) {
  require(!started_, "double init");
  started_ = true;
  dist_[id_] = kZero;
  announce(id_, out);
  start_round();
  if (round_pending_.empty()) end_of_round(out);
}

void ApspNode::announce(NodeId selected, Out& out) {
  HalfUnit d = dist_.at(selected);
  for (const auto& [v, w] : neighbors_) {
    (void)w;
    if (inactive_out_.count(v)) continue;
    out.send(v, UpdateMsg{id_, selected, d});
    announced_[v][selected] = d;
  }
}

void ApspNode::start_round() {
  round_pending_.clear();
  for (const auto& [v, w] : neighbors_) {
    (void)w;
    if (inactive_in_.count(v)) continue;
    auto it = banked_.find(v);
    if (it != banked_.end() && it->second > 0) {
      --it->second;  // consume a message that ran ahead
    } else {
      round_pending_.insert(v);
    }
  }
}

bool ApspNode::relax(NodeId via, NodeId selected, HalfUnit announced) {
  HalfUnit cand = weight_to(via) + announced;
  auto it = dist_.find(selected);
  if (it == dist_.end() || cand < it->second) {
    dist_[selected] = cand;
    next_hop_[selected] = via;
    return true;
  }
  if (cand == it->second && selected != id_) {
    auto nh = next_hop_.find(selected);
    if (nh != next_hop_.end() && via < nh->second) nh->second = via;
  }
  return false;
}

// Every strict improvement reaches every neighbor right away: queued for the
// next round while active, forwarded on open channels while inactive, and
// carried as row reconciliation on channels whose routing already closed.
void ApspNode::push_improvement(NodeId selected, Out& out) {
  require(!tree_anchored_, "table improved after the tree was anchored");
  if (!inactive_) {
    update_set_.insert(selected);
    return;
  }
  HalfUnit d = dist_.at(selected);
  for (const auto& [v, w] : neighbors_) {
    (void)w;
    if (!inactive_out_.count(v)) {
      require(inactive_in_.count(v) != 0, "open channel to an active neighbor while inactive");
      out.send(v, UpdateMsg{id_, selected, d});
    } else {
      out.send(v, RowSyncMsg{id_, selected, d});
    }
    announced_[v][selected] = d;
  }
}

void ApspNode::end_of_round(Out& out) {
  while (true) {
    if (update_set_.empty()) {
      inactive_ = true;
      for (const auto& [v, w] : neighbors_) {
        (void)w;
        if (!inactive_in_.count(v) && !inactive_out_.count(v)) {
          out.send(v, InactiveMsg{});
          inactive_out_.insert(v);
        }
      }
      check_all_in(out);
      return;
    }
    NodeId pick = *update_set_.begin();
    for (NodeId z : update_set_) {
      if (dist_.at(z) < dist_.at(pick) || (dist_.at(z) == dist_.at(pick) && z < pick))
        pick = z;
    }
    update_set_.erase(pick);
    announce(pick, out);
    start_round();
    if (!round_pending_.empty()) return;
  }
}

bool ApspNode::handle(NodeId from, const Message& m, Out& out) {
  if (const auto* u = std::get_if<UpdateMsg>(&m)) {
    on_update(from, *u, out);
    return true;
  }
  if (std::get_if<InactiveMsg>(&m)) {
    on_inactive(from, out);
    return true;
  }
  if (const auto* r = std::get_if<RowSyncMsg>(&m)) {
    on_row_sync(from, *r, out);
    return true;
  }
  if (std::get_if<RowDoneMsg>(&m)) {
    on_row_done(from, out);
    return true;
  }
  if (const auto* p = std::get_if<ParentNotifyMsg>(&m)) {
    on_parent_notify(from, *p, out);
    return true;
  }
  if (const auto* e = std::get_if<EccUpMsg>(&m)) {
    on_ecc_up(from, *e, out);
    return true;
  }
  if (const auto* g = std::get_if<GlobalsDownMsg>(&m)) {
    on_globals_down(from, *g, out);
    return true;
  }
  return false;
}

void ApspNode::on_update(NodeId from, const UpdateMsg& m, Out& out) {
  if (!started_) on_init(out);  // wake-up on first message
  require(m.sender == from, "update sender field mismatch");
  require(!inactive_in_.count(from), "update received on a closed channel");
  copies_[from][m.selected] = m.distance;
  if (relax(from, m.selected, m.distance)) push_improvement(m.selected, out);
  if (!inactive_) {
    if (round_pending_.erase(from) == 0) ++banked_[from];
    if (round_pending_.empty()) end_of_round(out);
  }
}

void ApspNode::on_inactive(NodeId from, Out& out) {
  require(started_, "closure marker before any update");
  require(!inactive_in_.count(from), "duplicate closure marker on a channel");
  inactive_in_.insert(from);
  banked_.erase(from);
  if (!inactive_) {
    round_pending_.erase(from);
    if (round_pending_.empty()) end_of_round(out);
  } else {
    check_all_in(out);
  }
}

void ApspNode::check_all_in(Out& out) {
  if (!inactive_ || terminated_) return;
  if (inactive_in_.size() != neighbors_.size()) return;
  // No routing message can arrive anymore. Close the channels held open for
  // forwarding, sweep out any row entries a channel has not seen, and flush.
  for (const auto& [v, w] : neighbors_) {
    (void)w;
    if (!inactive_out_.count(v)) {
      out.send(v, InactiveMsg{});
      inactive_out_.insert(v);
    }
  }
  terminated_ = true;
  finish_routing(out);
}

void ApspNode::finish_routing(Out& out) {
  for (const auto& [v, w] : neighbors_) {
    (void)w;
    auto& sent = announced_[v];
    for (const auto& [z, d] : dist_) {
      auto it = sent.find(z);
      if (it == sent.end() || it->second != d) {
        out.send(v, RowSyncMsg{id_, z, d});
        sent[z] = d;
      }
    }
    out.send(v, RowDoneMsg{});
  }
  maybe_anchor_tree(out);
}

void ApspNode::on_row_sync(NodeId from, const RowSyncMsg& m, Out& out) {
  require(started_, "row reconciliation before any update");
  require(m.sender == from, "row sync sender field mismatch");
  copies_[from][m.selected] = m.distance;
  if (relax(from, m.selected, m.distance)) push_improvement(m.selected, out);
}

void ApspNode::on_row_done(NodeId from, Out& out) {
  require(inactive_in_.count(from) != 0, "flush marker before the channel closed");
  require(row_done_in_.insert(from).second, "duplicate flush marker");
  maybe_anchor_tree(out);
}

// Fix the root id and the parent pointer only after every neighbor flushed
// its reconciliation; from this point the table must never change again.
void ApspNode::maybe_anchor_tree(Out& out) {
  if (!terminated_ || tree_anchored_) return;
  if (row_done_in_.size() != neighbors_.size()) return;
  tree_anchored_ = true;
  u_min_ = dist_.begin()->first;
  if (id_ != u_min_) {
    auto it = next_hop_.find(u_min_);
    require(it != next_hop_.end(), "no route to the smallest id");
    parent_ = it->second;
  }
  for (const auto& [v, w] : neighbors_) {
    (void)w;
    out.send(v, ParentNotifyMsg{parent_ && *parent_ == v});
  }
  maybe_children_ready(out);
}

void ApspNode::on_parent_notify(NodeId from, const ParentNotifyMsg& m, Out& out) {
  require(row_done_in_.count(from) != 0, "parent claim before the flush marker");
  require(notify_recv_.insert(from).second, "duplicate parent claim");
  if (m.is_parent) children_.insert(from);
  maybe_children_ready(out);
}

void ApspNode::maybe_children_ready(Out& out) {
  if (!tree_anchored_ || children_ready_) return;
  if (notify_recv_.size() != neighbors_.size()) return;
  children_ready_ = true;
  if (parent_ && children_.count(*parent_))
    throw ProtocolError("both endpoints claim the same tree edge");
  own_ecc_ = kZero;
  for (const auto& [z, d] : dist_) {
    (void)z;
    own_ecc_ = max(own_ecc_, d);
  }
  maybe_finish_ecc(out);
}

void ApspNode::on_ecc_up(NodeId from, const EccUpMsg& m, Out& out) {
  require(notify_recv_.count(from) != 0, "eccentricity report before the parent claim");
  require(children_.count(from) != 0, "eccentricity report from a non-child");
  require(!ecc_reports_.count(from), "duplicate eccentricity report");
  ecc_reports_[from] = m;
  maybe_finish_ecc(out);
}

void ApspNode::maybe_finish_ecc(Out& out) {
  if (!children_ready_ || ecc_done_) return;
  for (NodeId c : children_)
    if (!ecc_reports_.count(c)) return;
  ecc_done_ = true;
  HalfUnit max_e = own_ecc_;
  HalfUnit min_e = own_ecc_;
  NodeId argmin = id_;
  for (const auto& [c, r] : ecc_reports_) {
    (void)c;
    max_e = max(max_e, r.max_ecc);
    if (r.min_ecc < min_e || (r.min_ecc == min_e && r.argmin_id < argmin)) {
      min_e = r.min_ecc;
      argmin = r.argmin_id;
    }
  }
  if (id_ == u_min_) {
    diameter_ = max_e;
    radius_ = min_e;
    globals_known_ = true;
    for (NodeId c : children_) out.send(c, GlobalsDownMsg{diameter_, radius_});
    if (on_globals_ready) on_globals_ready(out);
  } else {
    out.send(*parent_, EccUpMsg{max_e, min_e, argmin});
  }
}

void ApspNode::on_globals_down(NodeId from, const GlobalsDownMsg& m, Out& out) {
  require(parent_ && *parent_ == from, "globals broadcast from a non-parent");
  require(!globals_known_, "duplicate globals broadcast");
  diameter_ = m.diameter;
  radius_ = m.radius;
  globals_known_ = true;
  for (NodeId c : children_) out.send(c, GlobalsDownMsg{m.diameter, m.radius});
  if (on_globals_ready) on_globals_ready(out);
}

std::size_t ApspNode::state_entries() const {
  std::size_t n = dist_.size();
  for (const auto& [v, row] : copies_) {
    (void)v;
    n += row.size();
  }
  return n;
}

}  // namespace mdst::proto
