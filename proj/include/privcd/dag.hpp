#pragma once

#include <utility>
#include <vector>

#include "privcd/graph.hpp"
#include "privcd/rng.hpp"

namespace privcd {

// Directed acyclic graph with an explicit topological order; inputs are
// verified acyclic on construction.
struct Dag {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;  // from -> to
    std::vector<int> topo_order;

    Dag() = default;
    Dag(int nodes, std::vector<std::pair<int, int>> edge_list);

    std::vector<int> parents(int node) const;
    std::vector<int> children(int node) const;
    bool has_edge(int from, int to) const;

    MixedGraph as_mixed() const;
};

// Topological sort; empty result means a cycle was found.
std::vector<int> topological_order(int nodes, const std::vector<std::pair<int, int>>& edges);

bool is_acyclic(int nodes, const std::vector<std::pair<int, int>>& edges);

// Random DAG: draw a uniform node permutation, then include each
// earlier->later pair with probability edge_prob, visiting candidate
// parents in random order and truncating at max_parents.
Dag random_dag(int nodes, int max_parents, double edge_prob, Rng& rng);

}  // namespace privcd
