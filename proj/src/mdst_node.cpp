#include "mdst/proto/mdst_node.hpp"

#include "mdst/oracle.hpp"

namespace mdst::proto {

namespace {
void require(bool cond, const char* what) {
  if (!cond) throw ProtocolError(what);
}
}  // namespace

MdstNode::MdstNode(NodeId id, std::vector<std::pair<NodeId, HalfUnit>> neighbors, Options opt)
    : apsp_(id, std::move(neighbors)), opt_(opt) {
  apsp_.on_globals_ready = [this](Out& out) { on_globals(out); };
}

void MdstNode::on_init(Out& out) { apsp_.on_init(out); }

void MdstNode::on_message(NodeId from, const Message& m, Out& out) {
  if (apsp_.handle(from, m, out)) return;
  if (const auto* up = std::get_if<CandidateUpMsg>(&m)) {
    on_candidate_up(from, *up, out);
    return;
  }
  if (const auto* down = std::get_if<CandidateDownMsg>(&m)) {
    on_candidate_down(from, *down, out);
    return;
  }
  throw ProtocolError("unhandled message kind");
}

const CenterCandidate& MdstNode::center() const {
  if (!have_center_) throw ProtocolError("center not known yet");
  return center_;
}

void MdstNode::on_globals(Out& out) {
  local_center_scan();
  maybe_send_candidate(out);
}

// Scan the adjacent edges this node owns (those toward a larger id), in
// ascending order of the far endpoint. The running candidate starts as this
// node itself with its own eccentricity, so the aggregated minimum ranges
// over every vertex and every edge interior. The early exit is sound: no
// point of the graph has eccentricity below half the diameter, and any
// skipped candidate of equal value loses the canonical tie anyway.
void MdstNode::local_center_scan() {
  NodeId self = apsp_.id();
  own_cand_ = CenterCandidate{kZero, apsp_.own_ecc(), self, self};
  own_cand_w_ = kZero;
  HalfUnit diam = apsp_.diameter();
  for (const auto& [v, w] : apsp_.neighbors()) {
    if (v <= self) continue;
    if (opt_.prune && 2 * own_cand_.bound <= diam) break;
    const auto& row_v = apsp_.neighbor_rows().at(v);
    auto list = build_dominating_list(apsp_.dist(), row_v);
    EdgeCenter lc = edge_local_center(w, list);
    CenterCandidate cand{lc.alpha, lc.value, self, v};
    if (cand.key() < own_cand_.key()) {
      own_cand_ = cand;
      own_cand_w_ = w;
    }
  }
  scan_done_ = true;
}

void MdstNode::maybe_send_candidate(Out& out) {
  if (!scan_done_ || cand_sent_) return;
  for (NodeId c : apsp_.children())
    if (!cand_reports_.count(c)) return;
  cand_sent_ = true;
  CenterCandidate best = own_cand_;
  HalfUnit best_w = own_cand_w_;
  for (const auto& [c, r] : cand_reports_) {
    (void)c;
    if (r.cand.key() < best.key()) {
      best = r.cand;
      best_w = r.edge_weight;
    }
  }
  if (apsp_.id() == apsp_.root_id()) {
    center_ = best;
    center_w_ = best_w;
    have_center_ = true;
    for (NodeId c : apsp_.children()) out.send(c, CandidateDownMsg{best, best_w});
    attach_to_center();
  } else {
    out.send(*apsp_.parent_to_root(), CandidateUpMsg{best, best_w});
  }
}

void MdstNode::on_candidate_up(NodeId from, const CandidateUpMsg& m, Out& out) {
  require(apsp_.children().count(from) != 0, "candidate report from a non-child");
  require(!cand_reports_.count(from), "duplicate candidate report");
  cand_reports_[from] = m;
  maybe_send_candidate(out);
}

void MdstNode::on_candidate_down(NodeId from, const CandidateDownMsg& m, Out& out) {
  auto parent = apsp_.parent_to_root();
  require(parent && *parent == from, "center broadcast from a non-parent");
  require(!have_center_, "duplicate center broadcast");
  center_ = m.cand;
  center_w_ = m.edge_weight;
  have_center_ = true;
  for (NodeId c : apsp_.children()) out.send(c, CandidateDownMsg{m.cand, m.edge_weight});
  attach_to_center();
}

// Once the winner is known everywhere, each node picks the smallest-id
// neighbor lying on a shortest route toward it; the union of these links
// (plus the winning edge itself when the center is interior) is the tree.
void MdstNode::attach_to_center() {
  NodeId self = apsp_.id();
  const auto& dist = apsp_.dist();
  const auto& rows = apsp_.neighbor_rows();
  auto dist_to_center_from = [&](const std::map<NodeId, HalfUnit>& row) {
    if (center_.id1 == center_.id2) return row.at(center_.id1);
    return min(row.at(center_.id1) + center_.alpha,
               row.at(center_.id2) + (center_w_ - center_.alpha));
  };
  d_center_ = dist_to_center_from(dist);
  if (center_.id1 == center_.id2) {
    if (self == center_.id1) {
      at_center_ = true;
      mdst_parent_ = std::nullopt;
      require(d_center_ == kZero, "center node at non-zero distance from itself");
      done_ = true;
      return;
    }
  } else if (self == center_.id1 || self == center_.id2) {
    at_center_ = true;
    mdst_parent_ = std::nullopt;
    HalfUnit half_edge =
        self == center_.id1 ? center_.alpha : center_w_ - center_.alpha;
    require(d_center_ == half_edge, "winning edge endpoint not shortest through its half edge");
    done_ = true;
    return;
  }
  for (const auto& [z, w] : apsp_.neighbors()) {
    if (d_center_ == w + dist_to_center_from(rows.at(z))) {
      mdst_parent_ = z;
      done_ = true;
      return;
    }
  }
  throw ProtocolError("no neighbor lies on a shortest route to the center");
}

}  // namespace mdst::proto
