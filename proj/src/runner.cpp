#include "mdst/proto/runner.hpp"

namespace mdst::proto {

namespace {

RunOutcome run_impl(const Graph& g, const RunOptions& opt, const sim::Trace* replay) {
  using EngineT = sim::Engine<Message, MdstNode>;
  MdstNode::Options nopt{opt.prune};
  EngineT engine(
      g,
      [&g, nopt](NodeId id) { return std::make_unique<MdstNode>(id, g.neighbors(id), nopt); },
      opt.delay, sim::BitParams::for_graph(g), opt.event_budget);
  if (replay) engine.replay_delays(*replay);
  std::vector<NodeId> initiators = opt.initiators.empty() ? g.nodes() : opt.initiators;
  auto res = engine.run(initiators);

  RunOutcome out;
  out.metrics = res.metrics;
  out.trace = std::move(res.trace);
  for (const auto& [id, node] : engine.node_view()) {
    if (!node->done())
      throw ProtocolError("node " + std::to_string(id) + " did not finish at quiescence");
    const ApspNode& r = node->routing();
    NodeReport rep;
    rep.id = id;
    rep.root_id = r.root_id();
    rep.diameter = r.diameter();
    rep.radius = r.radius();
    rep.center = node->center();
    rep.center_edge_weight = node->center_edge_weight();
    rep.at_center = node->at_center();
    rep.mdst_parent = node->mdst_parent();
    rep.d_to_center = node->distance_to_center();
    rep.own_ecc = r.own_ecc();
    rep.dist_row = r.dist();
    rep.neighbor_rows = r.neighbor_rows();
    out.reports[id] = std::move(rep);
  }
  return out;
}

}  // namespace

RunOutcome run_protocol(const Graph& g, const RunOptions& opt) {
  return run_impl(g, opt, nullptr);
}

RunOutcome replay_protocol(const Graph& g, const RunOptions& opt, const sim::Trace& trace) {
  RunOutcome rerun = run_impl(g, opt, &trace);
  if (rerun.trace != trace) {
    std::size_t i = 0;
    while (i < rerun.trace.size() && i < trace.size() && rerun.trace[i] == trace[i]) ++i;
    throw sim::SimError("replay diverged at event " + std::to_string(i));
  }
  return rerun;
}

std::set<std::pair<NodeId, NodeId>> distributed_tree_edges(const RunOutcome& run) {
  std::set<std::pair<NodeId, NodeId>> edges;
  for (const auto& [id, rep] : run.reports) {
    if (rep.mdst_parent) {
      NodeId p = *rep.mdst_parent;
      edges.insert({std::min(id, p), std::max(id, p)});
    }
  }
  if (!run.reports.empty()) {
    const auto& c = run.reports.begin()->second.center;
    if (c.id1 != c.id2) edges.insert({c.id1, c.id2});
  }
  return edges;
}

}  // namespace mdst::proto
