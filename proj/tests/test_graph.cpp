#include "doctest.h"
#include "privcd/dag.hpp"
#include "privcd/dsep.hpp"
#include "privcd/graph.hpp"
#include "privcd/meek.hpp"

using namespace privcd;

TEST_SUITE_BEGIN("graph");

TEST_CASE("mixed graph keeps edge sets disjoint") {
    MixedGraph g(3);
    g.add_directed(0, 1);
    CHECK_THROWS(g.add_undirected(0, 1));
    CHECK_THROWS(g.add_directed(1, 0));
    CHECK_THROWS(g.add_directed(0, 0));
    g.add_undirected(1, 2);
    CHECK(g.adjacent(2, 1));
    CHECK(g.has_undirected(2, 1));
    g.orient(2, 1);
    CHECK(g.has_directed(2, 1));
    CHECK_FALSE(g.has_undirected(1, 2));
    g.remove_edge(1, 0);
    CHECK_FALSE(g.adjacent(0, 1));
}

TEST_CASE("graph json round-trips") {
    MixedGraph g({"A", "B", "C"});
    g.add_directed(0, 1);
    g.add_undirected(1, 2);
    auto restored = MixedGraph::from_json(g.to_json());
    CHECK(restored == g);
}

TEST_CASE("dag construction rejects cycles") {
    CHECK_THROWS(Dag(3, {{0, 1}, {1, 2}, {2, 0}}));
    Dag ok(3, {{0, 1}, {1, 2}});
    CHECK(ok.topo_order == std::vector<int>{0, 1, 2});
    CHECK(ok.parents(2) == std::vector<int>{1});
}

TEST_CASE("d-separation on the textbook structures") {
    // chain 0 -> 1 -> 2
    Dag chain(3, {{0, 1}, {1, 2}});
    CHECK_FALSE(d_separated(chain, 0, 2, {}));
    CHECK(d_separated(chain, 0, 2, {1}));
    // fork 0 <- 1 -> 2
    Dag fork(3, {{1, 0}, {1, 2}});
    CHECK_FALSE(d_separated(fork, 0, 2, {}));
    CHECK(d_separated(fork, 0, 2, {1}));
    // collider 0 -> 2 <- 1
    Dag collider(3, {{0, 2}, {1, 2}});
    CHECK(d_separated(collider, 0, 1, {}));
    CHECK_FALSE(d_separated(collider, 0, 1, {2}));
    // conditioning on a collider's descendant also opens the path
    Dag extended(4, {{0, 2}, {1, 2}, {2, 3}});
    CHECK(d_separated(extended, 0, 1, {}));
    CHECK_FALSE(d_separated(extended, 0, 1, {3}));
}

TEST_CASE("cpdag of a chain is fully undirected") {
    auto g = cpdag_of(Dag(3, {{0, 1}, {1, 2}}));
    CHECK(g.undirected_edges().size() == 2);
    CHECK(g.directed_edges().empty());
}

TEST_CASE("cpdag of a collider keeps the v-structure directed") {
    auto g = cpdag_of(Dag(3, {{0, 2}, {1, 2}}));
    CHECK(g.has_directed(0, 2));
    CHECK(g.has_directed(1, 2));
    CHECK_FALSE(g.adjacent(0, 1));
}

TEST_CASE("cpdag of an empty graph is empty") {
    auto g = cpdag_of(Dag(4, {}));
    CHECK(g.edge_count() == 0);
}

TEST_CASE("meek R1 propagates away from a collider") {
    // 0 -> 2 <- 1 with extra edge 2 - 3: R1 orients 2 -> 3.
    auto g = cpdag_of(Dag(4, {{0, 2}, {1, 2}, {2, 3}}));
    CHECK(g.has_directed(2, 3));
}

TEST_CASE("meek R2 closes directed two-chains") {
    MixedGraph g(3);
    g.add_directed(0, 1);
    g.add_directed(1, 2);
    g.add_undirected(0, 2);
    apply_meek_rules(g);
    CHECK(g.has_directed(0, 2));
}

TEST_CASE("meek R3 orients the kite") {
    MixedGraph g(4);
    g.add_undirected(0, 1);
    g.add_undirected(0, 2);
    g.add_undirected(0, 3);
    g.add_directed(2, 1);
    g.add_directed(3, 1);
    apply_meek_rules(g);
    CHECK(g.has_directed(0, 1));
}

TEST_CASE("orientation conflicts resolve deterministically (first wins)") {
    MixedGraph g(2);
    g.add_undirected(0, 1);
    CHECK(orient_if_possible(g, 0, 1));
    CHECK_FALSE(orient_if_possible(g, 1, 0));
    CHECK(g.has_directed(0, 1));
}

TEST_SUITE_END();
