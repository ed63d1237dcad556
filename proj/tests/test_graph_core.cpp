#include <doctest.h>

#include <string>

#include "localdel/graph_core.hpp"
#include "localdel/rng.hpp"
#include "oracles.hpp"
#include "util.hpp"

using namespace localdel;

namespace {

ColouredGraph cycle(int n) {
  ColouredGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

ColouredGraph random_multigraph(int n, int m, Rng& rng) {
  ColouredGraph g(n);
  for (int i = 0; i < m; ++i) g.add_edge(rng.index(n), rng.index(n));
  return g;
}

}  // namespace

TEST_SUITE("graph_core") {

TEST_CASE("girth of small graphs") {
  CHECK(girth(cycle(3)) == 3);
  ColouredGraph tree(5);
  tree.add_edge(0, 1);
  tree.add_edge(1, 2);
  tree.add_edge(1, 3);
  tree.add_edge(3, 4);
  CHECK(girth(tree) == kInfiniteGirth);
  CHECK(girth(ColouredGraph(0)) == kInfiniteGirth);

  ColouredGraph loop(2);
  loop.add_edge(0, 1);
  loop.add_edge(1, 1);
  CHECK(girth(loop) == 1);
  CHECK(loop.degree(1) == 3);

  ColouredGraph par(3);
  par.add_edge(0, 1);
  par.add_edge(1, 0);
  par.add_edge(1, 2);
  CHECK(girth(par) == 2);
}

TEST_CASE("petersen girth against cycle enumeration") {
  const ColouredGraph p = cage("petersen");
  CHECK(oracle::girth(p) == 5);
  CHECK(girth(p) == oracle::girth(p));
}

TEST_CASE("count_short_cycles") {
  ColouredGraph tree(4);
  tree.add_edge(0, 1);
  tree.add_edge(0, 2);
  tree.add_edge(0, 3);
  CHECK(count_short_cycles(tree, 10) == 0);
  CHECK(count_short_cycles(cycle(5), 5) == 5);
  CHECK(count_short_cycles(cycle(5), 4) == 0);
  const ColouredGraph p = cage("petersen");
  CHECK(oracle::vertices_on_short_cycles(p, 5) == 10);
  CHECK(count_short_cycles(p, 5) == 10);
}

TEST_CASE("cage catalogue") {
  const std::pair<const char*, std::pair<int, int>> want[] = {
      {"petersen", {10, 5}}, {"heawood", {14, 6}}, {"mcgee", {24, 7}}, {"tutte-coxeter", {30, 8}}};
  CHECK(cage_names().size() == 4);
  for (const auto& [name, ng] : want) {
    CAPTURE(name);
    const ColouredGraph g = cage(name);
    CHECK(g.order() == ng.first);
    CHECK(g.size() == 3 * ng.first / 2);
    CHECK(g.is_simple());
    CHECK(g.is_regular(3));
    CHECK(oracle::girth(g) == ng.second);
    CHECK(girth(g) == ng.second);
    CHECK(cage_girth(name) == ng.second);
    for (int v = 0; v < g.order(); ++v) CHECK(g.colour(v) == ColouredGraph::kNeutral);
  }
  CHECK(kind_of([] { cage("hoffman-singleton"); }) == "UnknownName");
}

TEST_CASE("edge-list parsing") {
  const ColouredGraph t = parse_graph("3 3\n0 1\n1 2\n2 0", GraphFormat::EdgeList);
  CHECK(t.order() == 3);
  CHECK(t.size() == 3);
  CHECK(girth(t) == 3);
  const ColouredGraph e = parse_graph("2 0", GraphFormat::EdgeList);
  CHECK(e.order() == 2);
  CHECK(e.size() == 0);

  CHECK(kind_of([] { parse_graph("", GraphFormat::EdgeList); }) == "MalformedHeader");
  CHECK(kind_of([] { parse_graph("x 2", GraphFormat::EdgeList); }) == "MalformedHeader");
  CHECK(kind_of([] { parse_graph("3 2\n0 1", GraphFormat::EdgeList); }) == "MalformedHeader");
  CHECK(kind_of([] { parse_graph("3 1\n0 3", GraphFormat::EdgeList); }) == "VertexOutOfRange");
  CHECK(kind_of([] { parse_graph("3 1\n-1 0", GraphFormat::EdgeList); }) == "VertexOutOfRange");
}

TEST_CASE("LCF parsing") {
  // Antipodal chords on a hexagon give K_{3,3}.
  const ColouredGraph k33 = parse_lcf("[3,-3]^3");
  CHECK(k33.order() == 6);
  CHECK(k33.is_simple());
  CHECK(k33.is_regular(3));
  CHECK(oracle::girth(k33) == 4);
  CHECK(girth(k33) == 4);
  // On six vertices a shift of 5 lands on the cycle neighbour.
  const ColouredGraph m = parse_lcf("[5,-5]^3");
  CHECK(m.order() == 6);
  CHECK_FALSE(m.is_simple());
  CHECK(girth(m) == 2);
  CHECK(parse_graph("[5,-5]^7", GraphFormat::LCF).order() == 14);

  CHECK(kind_of([] { parse_lcf("[2]^5"); }) == "OddLcfApplication");
  CHECK(kind_of([] { parse_lcf("[5,-5"); }) == "MalformedHeader");
}

TEST_CASE("serialize then parse is the identity") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + rng.index(12);
    const ColouredGraph g = random_multigraph(n, rng.index(20), rng);
    const std::string s = serialize_graph(g);
    const ColouredGraph h = parse_graph(s, GraphFormat::EdgeList);
    CHECK(serialize_graph(h) == s);
    CHECK(h.order() == g.order());
    CHECK(h.edges() == g.edges());
  }
}

TEST_CASE("girth <= L iff a vertex lies on a cycle of length <= L") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + rng.index(10);
    const ColouredGraph g = random_multigraph(n, rng.index(12), rng);
    const int gi = girth(g);
    CHECK(gi == oracle::girth(g));
    for (int L = 1; L <= 11; ++L) {
      const bool short_cycle = gi != kInfiniteGirth && gi <= L;
      CHECK(short_cycle == (count_short_cycles(g, L) > 0));
      CHECK(count_short_cycles(g, L) == oracle::vertices_on_short_cycles(g, L));
      CHECK(has_cycle_shorter_than(g, L) == (gi != kInfiniteGirth && gi < L));
    }
  }
}

TEST_CASE("mutation keeps the audit clean") {
  ColouredGraph g = cage("heawood");
  CHECK(g.audit().empty());
  g.kill(0, 1);
  CHECK_FALSE(g.alive(0));
  CHECK(g.degree(0) == 0);
  CHECK(g.size() == 18);
  const int e = g.incident(5)[0];
  g.remove_edge(e);
  CHECK_FALSE(g.present(e));
  CHECK(g.size() == 17);
  CHECK(g.audit().empty());
  CHECK(g.max_degree() == 3);
}

}
