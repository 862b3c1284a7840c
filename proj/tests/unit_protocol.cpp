#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "mdst/harness/report.hpp"
#include "mdst/oracle.hpp"
#include "mdst/proto/runner.hpp"

using namespace mdst;
using namespace mdst::proto;

namespace {

HalfUnit hu(std::int64_t halves) { return HalfUnit::from_halves(halves); }
HalfUnit w(std::int64_t units) { return HalfUnit::from_weight(units); }

Graph k2_unit() { return parse_graph("2 1\n1 2 1\n"); }
Graph line3_unit() { return parse_graph("3 2\n1 2 1\n2 3 1\n"); }
Graph c4_unit() { return parse_graph("4 4\n1 2 1\n2 3 1\n3 4 1\n1 4 1\n"); }

std::uint64_t kind_count(const sim::Metrics& m, const char* k) {
  auto it = m.messages_by_kind.find(k);
  return it == m.messages_by_kind.end() ? 0 : it->second;
}

}  // namespace

TEST_CASE("two nodes, unit weight: exact message counts and the midpoint center") {
  auto run = run_protocol(k2_unit());
  CHECK(kind_count(run.metrics, "Update") == 4);
  CHECK(kind_count(run.metrics, "Inactive") == 2);
  CHECK(kind_count(run.metrics, "CandidateUp") == 1);
  CHECK(kind_count(run.metrics, "CandidateDown") == 1);
  CHECK(kind_count(run.metrics, "ParentNotify") == 2);
  CHECK(kind_count(run.metrics, "RowSync") == 0);

  const auto& r1 = run.reports.at(1);
  CHECK(r1.root_id == 1);
  CHECK(r1.diameter == w(1));
  CHECK(r1.radius == w(1));
  CHECK(r1.center == CenterCandidate{hu(1), hu(1), 1, 2});
  CHECK(r1.at_center);
  CHECK(r1.d_to_center == hu(1));
  const auto& r2 = run.reports.at(2);
  CHECK(r2.at_center);
  CHECK(r2.d_to_center == hu(1));
  CHECK(distributed_tree_edges(run) == std::set<std::pair<NodeId, NodeId>>{{1, 2}});
}

TEST_CASE("three-node line: tables, tree and globals") {
  Graph g = line3_unit();
  auto run = run_protocol(g);
  DistMatrix d = apsp_sequential(g);

  for (NodeId u : g.nodes()) {
    const auto& r = run.reports.at(u);
    CHECK(r.root_id == 1);
    CHECK(r.dist_row == d.row(u));
    for (const auto& [v, row] : r.neighbor_rows) CHECK(row == d.row(v));
    CHECK(r.diameter == w(2));
    CHECK(r.radius == w(1));
  }
  CHECK(run.reports.at(1).own_ecc == w(2));
  CHECK(run.reports.at(2).own_ecc == w(1));

  // center is the middle node; the tree is the line itself
  CHECK(run.reports.at(1).center == CenterCandidate{kZero, w(1), 2, 2});
  CHECK(run.reports.at(2).at_center);
  CHECK(run.reports.at(1).mdst_parent == 2);
  CHECK(run.reports.at(3).mdst_parent == 2);
  CHECK(distributed_tree_edges(run) ==
        std::set<std::pair<NodeId, NodeId>>{{1, 2}, {2, 3}});
}

TEST_CASE("single node terminates with zero messages") {
  auto run = run_protocol(parse_graph("1 0"));
  CHECK(run.metrics.messages_total == 0);
  const auto& r = run.reports.at(1);
  CHECK(r.diameter == kZero);
  CHECK(r.radius == kZero);
  CHECK(r.center == CenterCandidate{kZero, kZero, 1, 1});
  CHECK(r.at_center);
  CHECK(distributed_tree_edges(run).empty());
}

TEST_CASE("square with unit weights: interior center and optimal tree") {
  auto run = run_protocol(c4_unit());
  const auto& r = run.reports.at(3);
  CHECK(r.center == CenterCandidate{hu(1), hu(3), 1, 2});  // (1,2) at 0.5, value 1.5
  CHECK(r.mdst_parent == 2);
  CHECK(r.d_to_center == hu(3));
  CHECK(run.reports.at(4).mdst_parent == 1);
  CHECK(run.reports.at(1).at_center);
  CHECK(run.reports.at(2).at_center);
  CHECK(distributed_tree_edges(run) ==
        std::set<std::pair<NodeId, NodeId>>{{1, 2}, {1, 4}, {2, 3}});
  CHECK(kind_count(run.metrics, "CandidateUp") == 3);
  CHECK(kind_count(run.metrics, "CandidateDown") == 3);
}

TEST_CASE("wake-up: a single initiator is enough and changes nothing") {
  Graph g = c4_unit();
  auto all = run_protocol(g);
  for (NodeId init : g.nodes()) {
    RunOptions opt;
    opt.initiators = {init};
    auto one = run_protocol(g, opt);
    CHECK(one.reports.at(1).center == all.reports.at(1).center);
    CHECK(distributed_tree_edges(one) == distributed_tree_edges(all));
  }
}

TEST_CASE("random delays do not change the outcome") {
  Graph g = c4_unit();
  auto unit = run_protocol(g);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RunOptions opt;
    opt.delay = sim::DelayModel::seeded(seed);
    auto r = run_protocol(g, opt);
    CHECK(r.reports.at(2).center == unit.reports.at(2).center);
    CHECK(distributed_tree_edges(r) == distributed_tree_edges(unit));
  }
}

TEST_CASE("state machine rejects out-of-order traffic") {
  ApspNode n(2, {{1, w(1)}, {3, w(1)}});
  Out out;
  n.on_init(out);
  CHECK_THROWS_AS(n.on_init(out), ProtocolError);  // double init

  // stale higher estimate leaves the table untouched
  ApspNode m(1, {{2, w(1)}});
  Out o2;
  m.on_init(o2);
  m.handle(2, UpdateMsg{2, 2, kZero}, o2);
  CHECK(m.dist().at(2) == w(1));
  Out o3;
  m.handle(2, UpdateMsg{2, 3, w(5)}, o3);
  CHECK(m.dist().at(3) == w(6));
  Out o4;
  m.handle(2, UpdateMsg{2, 3, w(7)}, o4);  // worse estimate arrives later
  CHECK(m.dist().at(3) == w(6));

  // duplicate closure markers are a protocol violation
  ApspNode q(1, {{2, w(1)}});
  Out o5;
  q.on_init(o5);
  q.handle(2, UpdateMsg{2, 2, kZero}, o5);
  q.handle(2, InactiveMsg{}, o5);
  CHECK_THROWS_AS(q.handle(2, InactiveMsg{}, o5), ProtocolError);
}

TEST_CASE("an update after the channel closed is a protocol violation") {
  ApspNode n(1, {{2, w(1)}});
  Out out;
  n.on_init(out);
  n.handle(2, UpdateMsg{2, 2, kZero}, out);
  n.handle(2, InactiveMsg{}, out);
  CHECK_THROWS_AS(n.handle(2, UpdateMsg{2, 3, w(2)}, out), ProtocolError);
}

TEST_CASE("diamond: route attachments match the sequential tree exactly") {
  Graph g = parse_graph("4 4\n1 2 1\n1 3 1\n2 4 1\n3 4 1\n");
  auto run = run_protocol(g);
  CHECK(run.reports.at(1).center.id1 == 1);
  auto oracle = mdst_sequential(g);
  CHECK(run.reports.at(1).center.key() ==
        center_key(oracle.second.node, oracle.second.value));
  CHECK(distributed_tree_edges(run) == tree_edge_set(oracle.first));
}

TEST_CASE("the scan respects ascending edge order and canonical ties") {
  Graph g = c4_unit();
  auto run = run_protocol(g);
  // node 1 owns (1,2) and (1,4), both with interior minimum 1.5; ascending
  // order keeps (1,2)
  CHECK(run.reports.at(1).center == CenterCandidate{hu(1), hu(3), 1, 2});
}

TEST_CASE("pruning on and off give identical results") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Graph g = generate_graph(GraphFamily::Random, 3 + seed % 8, WeightRange{1, 9},
                             mix_seed(31, seed));
    RunOptions a;
    RunOptions b;
    b.prune = false;
    auto ra = run_protocol(g, a);
    auto rb = run_protocol(g, b);
    CAPTURE(serialize_graph(g));
    CHECK(ra.reports.at(g.min_node_id()).center == rb.reports.at(g.min_node_id()).center);
    CHECK(distributed_tree_edges(ra) == distributed_tree_edges(rb));
  }
}

TEST_CASE("replay reproduces a protocol run byte for byte") {
  Graph g = c4_unit();
  RunOptions opt;
  opt.delay = sim::DelayModel::seeded(42);
  auto run = run_protocol(g, opt);
  auto again = replay_protocol(g, opt, run.trace);
  CHECK(again.trace == run.trace);
  CHECK(again.metrics == run.metrics);
}

TEST_CASE("regression: neighbor rows complete even when nodes quiesce early") {
  // Triangle with a heavy tail: nodes 1 and 2 exhaust their backlogs while
  // node 3 is still announcing far entries, so their final rows cross the
  // network after their own inactivation. Every copy must still end exact.
  Graph g = parse_graph("5 5\n1 2 1\n1 3 1\n2 3 1\n3 4 5\n4 5 5\n");
  DistMatrix d = apsp_sequential(g);
  for (std::uint64_t seed = 0; seed <= 12; ++seed) {
    RunOptions opt;
    if (seed > 0) opt.delay = sim::DelayModel::seeded(seed);
    auto run = run_protocol(g, opt);
    for (const auto& [id, rep] : run.reports) {
      CHECK(rep.dist_row == d.row(id));
      for (const auto& [v, row] : rep.neighbor_rows) {
        CAPTURE(id);
        CAPTURE(v);
        CHECK(row == d.row(v));
      }
    }
    auto oracle = mdst_sequential(g);
    CHECK(run.reports.at(1).center.key() ==
          center_key(oracle.second.node, oracle.second.value));
  }
}

TEST_CASE("five-node line: a leaf learns far rows only after it went quiet") {
  Graph g = generate_graph(GraphFamily::Line, 5, WeightRange{1, 1}, 0);
  DistMatrix d = apsp_sequential(g);
  auto run = run_protocol(g);
  for (const auto& [id, rep] : run.reports) {
    CHECK(rep.dist_row == d.row(id));
    for (const auto& [v, row] : rep.neighbor_rows) CHECK(row == d.row(v));
  }
  CHECK(run.reports.at(3).at_center);
  CHECK(distributed_tree_edges(run) ==
        std::set<std::pair<NodeId, NodeId>>{{1, 2}, {2, 3}, {3, 4}, {4, 5}});
}

TEST_CASE("per-channel closure discipline holds on assorted graphs") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Graph g = generate_graph(GraphFamily::Random, 2 + seed % 9, WeightRange{1, 10},
                             mix_seed(77, seed));
    RunOptions opt;
    opt.delay = sim::DelayModel::seeded(seed);
    auto run = run_protocol(g, opt);
    auto err = harness::check_channel_discipline(run.trace, g);
    CAPTURE(serialize_graph(g));
    CHECK(!err);
    CHECK(kind_count(run.metrics, "Inactive") == 2 * g.edge_count());
    CHECK(kind_count(run.metrics, "Update") <= 2 * g.node_count() * g.edge_count());
  }
}
