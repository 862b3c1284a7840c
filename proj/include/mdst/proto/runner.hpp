#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mdst/proto/mdst_node.hpp"
#include "mdst/sim/engine.hpp"

namespace mdst::proto {

struct NodeReport {
  NodeId id = 0;
  NodeId root_id = 0;  // smallest id in the graph, as learned by the node
  HalfUnit diameter;
  HalfUnit radius;
  CenterCandidate center;
  HalfUnit center_edge_weight;
  bool at_center = false;
  std::optional<NodeId> mdst_parent;
  HalfUnit d_to_center;
  HalfUnit own_ecc;
  std::map<NodeId, HalfUnit> dist_row;
  std::map<NodeId, std::map<NodeId, HalfUnit>> neighbor_rows;
};

struct RunOptions {
  sim::DelayModel delay = sim::DelayModel::unit();
  std::vector<NodeId> initiators;  // empty means all nodes
  bool prune = true;
  std::uint64_t event_budget = 10'000'000;
};

struct RunOutcome {
  std::map<NodeId, NodeReport> reports;
  sim::Metrics metrics;
  sim::Trace trace;
};

// Runs the full protocol stack on the graph until quiescence and extracts
// every node's final state. Throws sim::SimError / ProtocolError on
// protocol violations, stalls or budget exhaustion.
RunOutcome run_protocol(const Graph& g, const RunOptions& opt = {});

// Re-executes a run feeding the recorded delivery times back in and checks
// the trace reproduces byte for byte; returns the reports of the re-run.
RunOutcome replay_protocol(const Graph& g, const RunOptions& opt, const sim::Trace& trace);

// The spanning tree implied by the per-node attachments.
std::set<std::pair<NodeId, NodeId>> distributed_tree_edges(const RunOutcome& run);

}  // namespace mdst::proto
