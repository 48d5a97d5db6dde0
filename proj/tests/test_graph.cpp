#include <doctest.h>

#include <map>
#include <sstream>

#include "qlp/graph.hpp"
#include "test_support.hpp"

using namespace qlp;
using namespace qlp::test;

TEST_CASE("degree query counts and answers") {
  const Graph g = path_graph(3);
  QueryLedger ledger;
  CHECK(degree_query(g, ledger, 1) == 2);
  CHECK(degree_query(g, ledger, 0) == 1);
  CHECK(ledger.degree_queries == 2);
  CHECK(ledger.neighbour_queries == 0);
  CHECK_THROWS_AS(degree_query(g, ledger, 3), InvalidNodeError);
  CHECK_THROWS_AS(degree_query(g, ledger, -1), InvalidNodeError);
}

TEST_CASE("isolated node has degree zero") {
  const std::vector<std::pair<NodeId, NodeId>> edges = {{0, 1}};
  const Graph g = Graph::from_edges(3, edges);
  QueryLedger ledger;
  CHECK(degree_query(g, ledger, 2) == 0);
}

TEST_CASE("star degrees match brute-force adjacency count") {
  const Graph g = star_graph(3);
  const CountMatrix a = dense_adjacency(g);
  QueryLedger ledger;
  for (NodeId v = 0; v < g.node_count(); ++v)
    CHECK(degree_query(g, ledger, v) == a.row(v).sum());
  CHECK(degree_query(g, ledger, 0) == 3);
  CHECK(degree_query(g, ledger, 1) == 1);
}

TEST_CASE("neighbour query returns sorted l-th neighbour or absent") {
  const Graph g = path_graph(3);
  QueryLedger ledger;
  CHECK(neighbour_query(g, ledger, 1, 1) == 0);
  CHECK(neighbour_query(g, ledger, 1, 2) == 2);
  CHECK(neighbour_query(g, ledger, 1, 3) == std::nullopt);
  CHECK(neighbour_query(g, ledger, 0, 1) == 1);
  CHECK(ledger.neighbour_queries == 4);
  CHECK_THROWS_AS(neighbour_query(g, ledger, 0, 0), ParameterError);
}

TEST_CASE("vertex pair query") {
  const Graph path = path_graph(3);
  QueryLedger ledger;
  CHECK(vertex_pair_query(path, ledger, 0, 1) == 1);
  CHECK(vertex_pair_query(path, ledger, 0, 2) == 0);
  for (NodeId v = 0; v < 3; ++v)
    CHECK(vertex_pair_query(path, ledger, v, v) == 0);
  CHECK(ledger.pair_queries == 5);

  const Graph k4 = complete_graph(4);
  for (NodeId u = 0; u < 4; ++u)
    for (NodeId v = 0; v < 4; ++v)
      if (u != v) CHECK(vertex_pair_query(k4, ledger, u, v) == 1);
}

TEST_CASE("load_edge_list parses, remaps and reports drops") {
  SUBCASE("path") {
    std::istringstream in("0 1\n1 2");
    const auto report = load_edge_list(in);
    CHECK(report.graph.node_count() == 3);
    CHECK(report.graph.edge_count() == 2);
    CHECK(report.duplicates_dropped == 0);
    CHECK(report.self_loops_dropped == 0);
  }
  SUBCASE("duplicates and self loops dropped with counts") {
    std::istringstream in("a b\nb a\na a");
    const auto report = load_edge_list(in);
    CHECK(report.graph.node_count() == 2);
    CHECK(report.graph.edge_count() == 1);
    CHECK(report.duplicates_dropped == 1);
    CHECK(report.self_loops_dropped == 1);
    CHECK(report.graph.label(0) == "a");
    CHECK(report.graph.label(1) == "b");
  }
  SUBCASE("comments skipped, labels remapped densely") {
    std::istringstream in("# comment\n5 9");
    const auto report = load_edge_list(in);
    CHECK(report.graph.node_count() == 2);
    CHECK(report.graph.edge_count() == 1);
    CHECK(report.graph.label(0) == "5");
    CHECK(report.graph.label(1) == "9");
  }
  SUBCASE("malformed line reports its number") {
    std::istringstream in("0 1\nbroken\n1 2");
    try {
      load_edge_list(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("trailing tokens rejected") {
    std::istringstream in("0 1 7");
    CHECK_THROWS_AS(load_edge_list(in), ParseError);
  }
  SUBCASE("empty input") {
    std::istringstream in("# nothing here\n\n");
    CHECK_THROWS_AS(load_edge_list(in), EmptyGraphError);
  }
}

TEST_CASE("edge list round trip preserves labels") {
  std::istringstream in("alpha beta\nbeta gamma\n");
  const auto report = load_edge_list(in);
  std::ostringstream out;
  write_edge_list(out, report.graph);
  std::istringstream back(out.str());
  const auto second = load_edge_list(back);
  CHECK(second.graph.node_count() == report.graph.node_count());
  CHECK(second.graph.edge_count() == report.graph.edge_count());
}

TEST_CASE("degree statistics") {
  const Graph path = path_graph(3);
  const auto stats = degree_statistics(path);
  CHECK(stats.k_av == doctest::Approx(4.0 / 3.0));
  CHECK(stats.k_max == 2);
  CHECK(degree_moment_sum(path, 2) == 6);  // 1 + 4 + 1
  CHECK(degree_moment(path, 2) == doctest::Approx(2.0));

  const Graph c5 = cycle_graph(5);
  CHECK(degree_statistics(c5).k_av == doctest::Approx(2.0));
  CHECK(degree_moment(c5, 3) == doctest::Approx(8.0));

  const Graph s3 = star_graph(3);
  CHECK(degree_moment(s3, 2) == doctest::Approx(3.0));  // (9 + 3) / 4
}

TEST_CASE("graph invariants hold for random edge lists") {
  RandomStream rng(20240801, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const NodeId n = 2 + static_cast<NodeId>(rng.next_index(40));
    auto edges = random_edges(rng, n, 0.2);
    // inject duplicates and self loops; construction must drop them
    if (!edges.empty()) edges.push_back(edges.front());
    edges.emplace_back(0, 0);
    const Graph g = Graph::from_edges(n, edges);

    std::int64_t degree_sum = 0;
    for (NodeId v = 0; v < n; ++v) {
      const auto nb = g.neighbours(v);
      for (std::size_t k = 0; k + 1 < nb.size(); ++k)
        CHECK(nb[k] < nb[k + 1]);  // sorted, no duplicates
      for (NodeId u : nb) {
        CHECK(u != v);
        CHECK(g.has_edge(u, v));  // symmetry
      }
      degree_sum += g.degree(v);
    }
    CHECK(degree_sum == 2 * g.edge_count());
  }
}

TEST_CASE("degree scan costs N queries and sums to 2|E|") {
  RandomStream rng(7, 1);
  const Graph g = random_graph(rng, 25, 0.3);
  QueryLedger ledger;
  std::int64_t total = 0;
  for (NodeId v = 0; v < g.node_count(); ++v)
    total += degree_query(g, ledger, v);
  CHECK(total == 2 * g.edge_count());
  CHECK(ledger.degree_queries == static_cast<std::uint64_t>(g.node_count()));
}

TEST_CASE("neighbour enumeration reconstructs the edge multiset at 2|E| cost") {
  RandomStream rng(7, 2);
  const Graph g = random_graph(rng, 20, 0.25);
  QueryLedger ledger;
  std::map<std::pair<NodeId, NodeId>, int> seen;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const int k = degree_query(g, ledger, v);
    for (int l = 1; l <= k; ++l) {
      const auto u = neighbour_query(g, ledger, v, l);
      REQUIRE(u.has_value());
      ++seen[{std::min(v, *u), std::max(v, *u)}];
    }
  }
  CHECK(ledger.neighbour_queries ==
        static_cast<std::uint64_t>(2 * g.edge_count()));
  CHECK(std::ssize(seen) == g.edge_count());
  for (const auto& [edge, count] : seen) CHECK(count == 2);
}

TEST_CASE("pair queries are symmetric") {
  RandomStream rng(7, 3);
  const Graph g = random_graph(rng, 30, 0.2);
  QueryLedger ledger;
  for (int trial = 0; trial < 200; ++trial) {
    const NodeId u = static_cast<NodeId>(rng.next_index(g.node_count()));
    const NodeId v = static_cast<NodeId>(rng.next_index(g.node_count()));
    CHECK(vertex_pair_query(g, ledger, u, v) ==
          vertex_pair_query(g, ledger, v, u));
  }
}

TEST_CASE("ledger merge is associative and commutative") {
  const QueryLedger a{1, 2, 3}, b{10, 20, 30}, c{100, 200, 300};
  CHECK((a + b) + c == a + (b + c));
  CHECK(a + b == b + a);
  QueryLedger acc;
  acc += a;
  acc += b;
  CHECK(acc == a + b);
}
