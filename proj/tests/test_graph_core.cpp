#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "test_support.hpp"

using namespace layerdag;
using testsup::dag_from;
using testsup::ns;

TEST_CASE("node set basics") {
  NodeSet s(130);
  REQUIRE(s.universe() == 130);
  REQUIRE(s.empty());
  REQUIRE(s.count() == 0);
  REQUIRE(s.first() == -1);

  s.insert(0);
  s.insert(64);
  s.insert(129);
  REQUIRE(s.count() == 3);
  REQUIRE(s.contains(64));
  REQUIRE_FALSE(s.contains(63));
  REQUIRE(s.first() == 0);
  REQUIRE(s.to_vector() == std::vector<int>{0, 64, 129});

  s.erase(64);
  REQUIRE_FALSE(s.contains(64));
  REQUIRE(s.count() == 2);

  std::vector<int> visited;
  s.for_each([&](int v) { visited.push_back(v); });
  REQUIRE(visited == std::vector<int>{0, 129});

  s.clear();
  REQUIRE(s.empty());
}

TEST_CASE("node set algebra") {
  NodeSet a = ns(10, {1, 3, 5});
  NodeSet b = ns(10, {3, 5, 7});

  REQUIRE((a | b).to_vector() == std::vector<int>{1, 3, 5, 7});
  REQUIRE((a & b).to_vector() == std::vector<int>{3, 5});
  REQUIRE((a - b).to_vector() == std::vector<int>{1});

  REQUIRE(ns(10, {3, 5}).is_subset_of(a));
  REQUIRE_FALSE(a.is_subset_of(b));
  REQUIRE(a.intersects(b));
  REQUIRE_FALSE(ns(10, {2}).intersects(a));

  REQUIRE(a == ns(10, {1, 3, 5}));
  REQUIRE(a != b);
  REQUIRE(ns(3, {1}) != ns(10, {1}));  // different universes differ

  REQUIRE(NodeSet::full(4).to_vector() == std::vector<int>{0, 1, 2, 3});
  REQUIRE(NodeSet::full(0).empty());
}

TEST_CASE("dag construction and accessors") {
  Dag g({"A", "B", "C", "D"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  REQUIRE(g.node_count() == 4);
  REQUIRE(g.arc_count() == 4);
  REQUIRE(g.label(2) == "C");
  REQUIRE(g.index_of("D") == 3);
  REQUIRE(g.has_label("A"));
  REQUIRE_FALSE(g.has_label("Z"));
  REQUIRE_THROWS_AS(g.index_of("Z"), format_error);

  REQUIRE(g.children(0) == std::vector<int>{1, 2});
  REQUIRE(g.parents(3) == std::vector<int>{1, 2});
  REQUIRE(g.in_degree(0) == 0);
  REQUIRE(g.out_degree(0) == 2);
  REQUIRE(g.degree(1) == 2);
  REQUIRE(g.has_arc(0, 1));
  REQUIRE_FALSE(g.has_arc(1, 0));
  REQUIRE(g.adjacent(1) == ns(4, {0, 3}));

  std::vector<std::pair<int, int>> arcs;
  g.for_each_arc([&](int p, int c) { arcs.emplace_back(p, c); });
  REQUIRE(arcs == std::vector<std::pair<int, int>>{
                      {0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("dag construction rejects bad input") {
  REQUIRE_THROWS_AS(Dag({"A", "A"}, {}), format_error);
  REQUIRE_THROWS_AS(Dag({"A"}, {{0, 1}}), format_error);
  REQUIRE_THROWS_AS(Dag({"A"}, {{0, 0}}), self_loop_error);
  REQUIRE_THROWS_AS(Dag({"A", "B"}, {{0, 1}, {0, 1}}), duplicate_arc_error);
  REQUIRE_THROWS_AS(Dag({"A", "B"}, {{0, 1}, {1, 0}}), cycle_error);

  try {
    Dag({"A", "B", "C"}, {{0, 1}, {1, 2}, {2, 0}});
    FAIL("cycle not detected");
  } catch (const cycle_error& e) {
    // The reported arc must be a real arc of the cycle.
    std::set<std::pair<std::string, std::string>> cycle_arcs{
        {"A", "B"}, {"B", "C"}, {"C", "A"}};
    REQUIRE(cycle_arcs.count({e.parent, e.child}) == 1);
  }

  // A cycle that only exists off the main component is still rejected.
  REQUIRE_THROWS_AS(
      Dag({"A", "B", "C"}, {{1, 2}, {2, 1}}), cycle_error);

  REQUIRE_THROWS_AS(
      Dag::from_labeled_arcs({"A"}, {{"A", "B"}}), format_error);
}

TEST_CASE("topological sort is deterministic") {
  Dag g({"A", "B", "C", "D"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  REQUIRE(topological_sort(g) == std::vector<int>{0, 1, 2, 3});

  // Two sources: the smaller index goes first.
  Dag h({"A", "B", "C"}, {{1, 0}, {2, 0}});
  REQUIRE(topological_sort(h) == std::vector<int>{1, 2, 0});
}

TEST_CASE("boundary vars") {
  Dag g = dag_from("A B\nB C\nC D\n");
  REQUIRE(boundary_vars(g, ns(4, {})) == ns(4, {}));
  REQUIRE(boundary_vars(g, ns(4, {0})) == ns(4, {1}));
  REQUIRE(boundary_vars(g, ns(4, {1})) == ns(4, {0, 2}));
  REQUIRE(boundary_vars(g, ns(4, {0, 3})) == ns(4, {1, 2}));
  REQUIRE(boundary_vars(g, NodeSet::full(4)) == ns(4, {}));
}

TEST_CASE("node classification") {
  SECTION("chain with a chord") {
    Dag g = family("chord_chain", 4);  // v1->v2->v3->v4 plus v1->v4
    NodeClassification c = classify_nodes(g);
    REQUIRE(c.chorded == ns(4, {1, 2}));
    REQUIRE(c.roots == ns(4, {0}));
    REQUIRE(c.branch == ns(4, {3}));
  }
  SECTION("star has no chords") {
    Dag g = family("star", 4);
    NodeClassification c = classify_nodes(g);
    REQUIRE(c.chorded.empty());
    REQUIRE(c.roots == ns(4, {0}));
    REQUIRE(c.branch == ns(4, {1, 2, 3}));
  }
  SECTION("triangle") {
    Dag g = dag_from("A B\nA C\nB C\n");
    NodeClassification c = classify_nodes(g);
    REQUIRE(c.chorded == ns(3, {1}));  // B sits under the chord A->C
    REQUIRE(c.roots == ns(3, {0}));
    REQUIRE(c.branch == ns(3, {2}));
  }
  SECTION("long chord marks every node it spans") {
    Dag g = dag_from("A B\nB C\nC D\nD E\nA E\n");
    NodeClassification c = classify_nodes(g);
    REQUIRE(c.chorded == ns(5, {1, 2, 3}));
  }
  SECTION("classes partition the nodes") {
    for (const Dag& g : testsup::all_dags(3, false)) {
      NodeClassification c = classify_nodes(g);
      REQUIRE((c.chorded | c.roots | c.branch) == NodeSet::full(3));
      REQUIRE_FALSE(c.chorded.intersects(c.roots));
      REQUIRE_FALSE(c.chorded.intersects(c.branch));
      REQUIRE_FALSE(c.roots.intersects(c.branch));
    }
  }
}

TEST_CASE("moralization marries co-parents") {
  Dag g({"A", "B", "C", "D"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  UndirectedGraph u = moralize(g);
  REQUIRE(u.edge_count == 5);
  REQUIRE(u.has_edge(0, 1));
  REQUIRE(u.has_edge(1, 2));  // B and C share the child D
  REQUIRE_FALSE(u.has_edge(0, 3));
}

TEST_CASE("weakly connected components") {
  Dag g = dag_from("#nodes: A B C D E\nA B\nD C\n");
  std::vector<NodeSet> comps = weakly_connected_components(g);
  REQUIRE(comps.size() == 3);
  REQUIRE(comps[0] == ns(5, {0, 1}));
  REQUIRE(comps[1] == ns(5, {2, 3}));
  REQUIRE(comps[2] == ns(5, {4}));
}

TEST_CASE("induced subgraph") {
  Dag g = dag_from("A B\nB C\nA C\n");
  Dag sub = induced_subgraph(g, ns(3, {0, 2}));
  REQUIRE(sub.node_count() == 2);
  REQUIRE(sub.labels() == std::vector<std::string>{"A", "C"});
  REQUIRE(sub.arc_count() == 1);
  REQUIRE(sub.has_arc(0, 1));  // A->C survives, B's arcs do not
}

TEST_CASE("edge list parsing") {
  SECTION("numbered by first appearance") {
    Dag g = dag_from("# chain\nB A\n\nA C\n");
    REQUIRE(g.labels() == std::vector<std::string>{"B", "A", "C"});
    REQUIRE(g.arc_count() == 2);
  }
  SECTION("header pins the node order and keeps isolated nodes") {
    Dag g = dag_from("#nodes: X Y Z\nX Y\n");
    REQUIRE(g.labels() == std::vector<std::string>{"X", "Y", "Z"});
    REQUIRE(g.degree(2) == 0);
  }
  SECTION("node missing from the header is an error") {
    REQUIRE_THROWS_AS(dag_from("#nodes: X Y\nX Q\n"), format_error);
  }
  SECTION("malformed lines") {
    REQUIRE_THROWS_AS(dag_from("A\n"), format_error);
    REQUIRE_THROWS_AS(dag_from("A B C\n"), format_error);
  }
  SECTION("cycles are rejected at parse time") {
    REQUIRE_THROWS_AS(dag_from("A B\nB A\n"), cycle_error);
  }
}

TEST_CASE("edge list round trip") {
  Dag g = dag_from("#nodes: tip W0#1 W0#2\nW0#1 tip\nW0#2 tip\nW0#2 W0#1\n");
  std::string text = write_edge_list(g);
  Dag back = dag_from(text);
  REQUIRE(back.labels() == g.labels());
  REQUIRE(back.arc_count() == g.arc_count());
  REQUIRE(write_edge_list(back) == text);

  // The writer always pins the node set, so isolated nodes survive.
  Dag iso({"only"}, {});
  REQUIRE(dag_from(write_edge_list(iso)).node_count() == 1);
}
