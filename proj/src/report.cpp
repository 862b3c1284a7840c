#include "mdst/harness/report.hpp"

#include <sstream>

#include "json.hpp"

namespace mdst::harness {

using nlohmann::json;

std::optional<std::string> check_channel_discipline(const sim::Trace& trace, const Graph& g) {
  std::map<std::pair<NodeId, NodeId>, int> inactive_count;
  std::map<std::pair<NodeId, NodeId>, bool> closed;
  for (const auto& t : trace) {
    auto ch = std::make_pair(t.src, t.dst);
    bool routing_kind = t.kind == "Update" || t.kind == "Inactive";
    if (closed[ch] && routing_kind)
      return "routing message after the closure marker on " + std::to_string(t.src) + "->" +
             std::to_string(t.dst);
    if (t.kind == "Inactive") {
      if (++inactive_count[ch] > 1)
        return "more than one closure marker on " + std::to_string(t.src) + "->" +
               std::to_string(t.dst);
      closed[ch] = true;
    }
  }
  std::size_t channels = 0;
  for (const auto& [ch, cnt] : inactive_count) {
    (void)ch;
    channels += cnt;
  }
  if (channels != 2 * g.edge_count())
    return "closure markers seen on " + std::to_string(channels) + " channels, expected " +
           std::to_string(2 * g.edge_count());
  return std::nullopt;
}

RunReport verify_run(const Graph& g, const proto::RunOptions& opt) {
  RunReport rep;
  rep.n = g.node_count();
  rep.m = g.edge_count();

  DistMatrix d = apsp_sequential(g);
  auto ecc = eccentricities(g, d);
  rep.oracle_center = absolute_center(g, d);
  Tree otree = shortest_path_tree(g, d, rep.oracle_center.node);
  rep.oracle_edges = tree_edge_set(otree);
  rep.oracle_tree_diameter = tree_diameter(otree, g);
  rep.oracle_diameter = ecc.diameter;
  rep.oracle_radius = ecc.radius;

  auto fail = [&rep](const std::string& why) { rep.failures.push_back(why); };

  proto::RunOutcome run;
  try {
    run = proto::run_protocol(g, opt);
  } catch (const std::exception& ex) {
    fail(std::string("run aborted: ") + ex.what());
    return rep;
  }
  rep.metrics = run.metrics;

  CenterResult brute = brute_force_center(g);
  if (brute.key() != rep.oracle_center.key())
    fail("sequential center disagrees with the brute-force envelope scan");

  const auto& first = run.reports.begin()->second;
  rep.distributed_center = first.center;
  for (const auto& [id, r] : run.reports) {
    if (!(r.center == first.center))
      fail("node " + std::to_string(id) + " disagrees on the center");
    if (r.root_id != g.min_node_id())
      fail("node " + std::to_string(id) + " found the wrong smallest id");
    if (r.diameter != ecc.diameter || r.radius != ecc.radius)
      fail("node " + std::to_string(id) + " holds wrong diameter/radius");
    if (r.own_ecc != ecc.ecc.at(id))
      fail("node " + std::to_string(id) + " computed a wrong eccentricity");
    if (r.dist_row != d.row(id))
      fail("node " + std::to_string(id) + " ended with a wrong distance row");
    for (const auto& [v, row] : r.neighbor_rows) {
      if (row != d.row(v))
        fail("node " + std::to_string(id) + " holds a wrong copy of the row of " +
             std::to_string(v));
    }
  }

  if (first.center.key() != rep.oracle_center.key())
    fail("distributed center " + first.center.to_general_node().str() + " (" +
         first.center.bound.str() + ") != sequential " + rep.oracle_center.node.str() + " (" +
         rep.oracle_center.value.str() + ")");

  rep.distributed_edges = proto::distributed_tree_edges(run);
  if (rep.distributed_edges != rep.oracle_edges) fail("distributed tree differs from oracle tree");

  Tree dtree;  // diameter of the distributed tree, measured by the oracle
  dtree.root = first.center.to_general_node();
  for (const auto& [id, r] : run.reports) dtree.parent[id] = r.mdst_parent;
  try {
    rep.distributed_tree_diameter = tree_diameter(dtree, g);
    if (rep.distributed_tree_diameter != rep.oracle_tree_diameter)
      fail("distributed tree diameter differs from oracle tree diameter");
  } catch (const std::exception& ex) {
    fail(std::string("distributed parent links are not a tree: ") + ex.what());
  }

  // Per-node route prices toward the center.
  DistMatrix dm = d;
  for (const auto& [id, r] : run.reports) {
    HalfUnit want;
    const auto& c = rep.oracle_center.node;
    if (c.is_real()) {
      want = dm.at(c.id1, id);
    } else {
      HalfUnit w = g.weight(c.id1, c.id2);
      want = min(c.alpha + dm.at(c.id1, id), (w - c.alpha) + dm.at(c.id2, id));
    }
    if (r.d_to_center != want)
      fail("node " + std::to_string(id) + " priced its route to the center wrong");
  }

  // Message accounting.
  auto kind_count = [&](const char* k) {
    auto it = run.metrics.messages_by_kind.find(k);
    return it == run.metrics.messages_by_kind.end() ? std::uint64_t{0} : it->second;
  };
  std::uint64_t n = g.node_count(), m = g.edge_count();
  if (kind_count("Inactive") != 2 * m)
    fail("closure markers: " + std::to_string(kind_count("Inactive")) + " != 2m = " +
         std::to_string(2 * m));
  if (kind_count("Update") > 2 * n * m)
    fail("update count " + std::to_string(kind_count("Update")) + " exceeds 2nm = " +
         std::to_string(2 * n * m));
  if (kind_count("CandidateUp") + kind_count("CandidateDown") != 2 * (n - 1))
    fail("candidate traffic != 2(n-1)");

  if (auto err = check_channel_discipline(run.trace, g)) fail(*err);

  // Center bounds.
  HalfUnit rstar = first.center.bound;
  if (2 * rstar < ecc.diameter) fail("center bound below half the diameter");
  if (rstar > ecc.radius) fail("center bound above the radius");

  return rep;
}

namespace {

json center_candidate_json(const proto::CenterCandidate& c) {
  return json{{"id1", c.id1},
              {"id2", c.id2},
              {"alpha_hu", c.alpha.halves()},
              {"alpha", c.alpha.str()},
              {"value_hu", c.bound.halves()},
              {"value", c.bound.str()}};
}

json edges_json(const std::set<std::pair<NodeId, NodeId>>& edges) {
  json a = json::array();
  for (const auto& [u, v] : edges) a.push_back(json::array({u, v}));
  return a;
}

json metrics_json(const sim::Metrics& m) {
  json by_kind = json::object();
  for (const auto& [k, v] : m.messages_by_kind) by_kind[k] = v;
  json per_node = json::object();
  for (const auto& [id, s] : m.per_node_state_size) per_node[std::to_string(id)] = s;
  return json{{"messages_total", m.messages_total},
              {"messages_by_kind", by_kind},
              {"bits_total", m.bits_total},
              {"finish_time_ticks", m.finish_time},
              {"finish_time_units", sim::ticks_to_units_str(m.finish_time)},
              {"per_node_state_size", per_node}};
}

}  // namespace

std::string metrics_to_json(const sim::Metrics& m) { return metrics_json(m).dump(2); }

std::string report_to_json(const RunReport& r, bool pretty) {
  json oc;
  const auto& c = r.oracle_center.node;
  if (c.is_real()) {
    oc = json{{"kind", "real"}, {"id", c.id1}, {"value", r.oracle_center.value.str()},
              {"value_hu", r.oracle_center.value.halves()}};
  } else {
    oc = json{{"kind", "interior"}, {"id1", c.id1},      {"id2", c.id2},
              {"alpha", c.alpha.str()}, {"alpha_hu", c.alpha.halves()},
              {"value", r.oracle_center.value.str()}, {"value_hu", r.oracle_center.value.halves()}};
  }
  json j{{"graph", json{{"n", r.n}, {"m", r.m}}},
         {"oracle",
          json{{"center", oc},
               {"tree_diameter", r.oracle_tree_diameter.str()},
               {"tree_diameter_hu", r.oracle_tree_diameter.halves()},
               {"diameter", r.oracle_diameter.str()},
               {"radius", r.oracle_radius.str()},
               {"tree_edges", edges_json(r.oracle_edges)}}},
         {"distributed",
          json{{"center", center_candidate_json(r.distributed_center)},
               {"tree_diameter", r.distributed_tree_diameter.str()},
               {"tree_edges", edges_json(r.distributed_edges)}}},
         {"metrics", metrics_json(r.metrics)},
         {"verdict", r.pass() ? "PASS" : "FAIL"},
         {"failures", r.failures}};
  return pretty ? j.dump(2) : j.dump();
}

std::string trace_to_jsonl(const sim::Trace& trace) {
  std::ostringstream out;
  for (const auto& t : trace) {
    json j{{"tick", t.time}, {"time", sim::ticks_to_units_str(t.time)}, {"src", t.src},
           {"dst", t.dst},   {"kind", t.kind},                          {"seq", t.seq},
           {"digest", t.digest}};
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace mdst::harness
