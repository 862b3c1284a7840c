#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdst/oracle.hpp"
#include "mdst/proto/runner.hpp"

namespace mdst::harness {

// Everything a single verified run produces: the distributed result, the
// sequential and brute-force reference results, message accounting, and the
// list of checks that failed (empty = PASS).
struct RunReport {
  std::size_t n = 0;
  std::size_t m = 0;
  CenterResult oracle_center;
  HalfUnit oracle_tree_diameter;
  HalfUnit oracle_diameter;
  HalfUnit oracle_radius;
  proto::CenterCandidate distributed_center;
  HalfUnit distributed_tree_diameter;
  std::set<std::pair<NodeId, NodeId>> distributed_edges;
  std::set<std::pair<NodeId, NodeId>> oracle_edges;
  sim::Metrics metrics;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

// Per ordered channel: exactly one closure marker, and no routing-phase
// message after it. Returns a description of the first violation.
std::optional<std::string> check_channel_discipline(const sim::Trace& trace, const Graph& g);

// Runs the protocol, compares against the sequential oracles and checks the
// message-count and bound properties. Never throws for a FAIL verdict;
// engine/protocol errors become failures too.
RunReport verify_run(const Graph& g, const proto::RunOptions& opt);

std::string report_to_json(const RunReport& r, bool pretty = true);
std::string trace_to_jsonl(const sim::Trace& trace);
std::string metrics_to_json(const sim::Metrics& m);

}  // namespace mdst::harness
