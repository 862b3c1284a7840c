#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "mdst/graph.hpp"
#include "mdst/halfunit.hpp"

using namespace mdst;

TEST_CASE("half unit arithmetic is exact") {
  HalfUnit a = HalfUnit::from_weight(3);
  HalfUnit b = HalfUnit::from_halves(1);  // 0.5
  CHECK(a.halves() == 6);
  CHECK((a + b).halves() == 7);
  CHECK((a - b).str() == "2.5");
  CHECK(b.str() == "0.5");
  CHECK(HalfUnit::from_halves(-1).str() == "-0.5");
  CHECK(a.whole() == 3);
  CHECK(HalfUnit::from_halves(6).half().halves() == 3);
  CHECK_THROWS(HalfUnit::from_halves(3).half());

  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    auto x = HalfUnit::from_halves(rng.uniform(-1000, 1000));
    auto y = HalfUnit::from_halves(rng.uniform(-1000, 1000));
    auto z = HalfUnit::from_halves(rng.uniform(-1000, 1000));
    CHECK(((x + y) + z) == (x + (y + z)));
    CHECK((x + y) == (y + x));
  }
}

TEST_CASE("parse a small line graph") {
  Graph g = parse_graph("3 2\n1 2 1\n2 3 2\n");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.weight(1, 2) == HalfUnit::from_weight(1));
  CHECK(g.weight(3, 2) == HalfUnit::from_weight(2));
  CHECK(g.min_node_id() == 1);
  CHECK(g.max_weight_units() == 2);
}

TEST_CASE("single node graph is vacuously connected") {
  Graph g = parse_graph("1 0");
  CHECK(g.node_count() == 1);
  CHECK(g.edge_count() == 0);
  CHECK(serialize_graph(g) == "1 0\n");
}

TEST_CASE("single node graph keeps a non-default id through a round trip") {
  Graph g = parse_graph("1 0\n7\n");
  CHECK(g.min_node_id() == 7);
  Graph g2 = parse_graph(serialize_graph(g));
  CHECK(g2.min_node_id() == 7);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_graph(""), GraphError);
  CHECK_THROWS_AS(parse_graph("2 1\n1 2"), GraphError);            // malformed edge
  CHECK_THROWS_AS(parse_graph("2 2\n1 2 1\n2 1 3"), GraphError);   // duplicate edge
  CHECK_THROWS_AS(parse_graph("2 1\n1 1 1"), GraphError);          // self loop
  CHECK_THROWS_AS(parse_graph("2 1\n1 2 0"), GraphError);          // non-positive weight
  CHECK_THROWS_AS(parse_graph("2 1\n1 2 -4"), GraphError);
  CHECK_THROWS_AS(parse_graph("4 2\n1 2 1\n3 4 1"), GraphError);   // disconnected
  CHECK_THROWS_AS(parse_graph("3 1\n1 2 1"), GraphError);          // node count mismatch
  CHECK_THROWS_AS(parse_graph("2 1\n1 2 1\n9"), GraphError);       // trailing tokens
  CHECK_THROWS_AS(parse_graph("2 1\n-1 2 1"), GraphError);         // negative id
}

TEST_CASE("serialization is canonical and round-trips") {
  Graph g = Graph::make({5, 1, 3}, {Edge{3, 1, HalfUnit::from_weight(2)},
                                    Edge{5, 3, HalfUnit::from_weight(1)}});
  std::string text = serialize_graph(g);
  CHECK(text == "3 2\n1 3 2\n3 5 1\n");
  Graph g2 = parse_graph(text);
  CHECK(serialize_graph(g2) == text);
  CHECK(g2.nodes() == g.nodes());
  CHECK(g2.edges() == g.edges());
}

TEST_CASE("generated families have the promised shape") {
  Graph line = generate_graph(GraphFamily::Line, 3, WeightRange{1, 1}, 0);
  CHECK(serialize_graph(line) == "3 2\n1 2 1\n2 3 1\n");

  Graph ring = generate_graph(GraphFamily::Ring, 4, WeightRange{1, 1}, 0);
  CHECK(ring.edge_count() == 4);
  CHECK(ring.has_edge(1, 4));
  CHECK(ring.has_edge(1, 2));

  Graph k4 = generate_graph(GraphFamily::Complete, 4, WeightRange{2, 2}, 0);
  CHECK(k4.edge_count() == 6);

  CHECK_THROWS_AS(generate_graph(GraphFamily::Line, 0, WeightRange{1, 1}, 0), GraphError);
}

TEST_CASE("random generation is deterministic and valid") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Graph a = generate_graph(GraphFamily::Random, 8, WeightRange{1, 10}, seed);
    Graph b = generate_graph(GraphFamily::Random, 8, WeightRange{1, 10}, seed);
    CHECK(serialize_graph(a) == serialize_graph(b));
    CHECK(a.node_count() == 8);
    for (const Edge& e : a.edges()) {
      CHECK(e.w >= HalfUnit::from_weight(1));
      CHECK(e.w <= HalfUnit::from_weight(10));
      CHECK(e.u < e.v);
    }
  }
  Graph a = generate_graph(GraphFamily::Random, 8, WeightRange{1, 10}, 1);
  Graph c = generate_graph(GraphFamily::Random, 8, WeightRange{1, 10}, 2);
  CHECK(serialize_graph(a) != serialize_graph(c));
}
