#include "privcd/dag.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace privcd {

std::vector<int> topological_order(int nodes, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> children(nodes);
    std::vector<int> indegree(nodes, 0);
    for (const auto& [from, to] : edges) {
        children[from].push_back(to);
        ++indegree[to];
    }
    std::vector<int> frontier;
    for (int i = 0; i < nodes; ++i) {
        if (indegree[i] == 0) frontier.push_back(i);
    }
    std::vector<int> order;
    order.reserve(nodes);
    // Smallest-index-first for a deterministic order.
    std::make_heap(frontier.begin(), frontier.end(), std::greater<>());
    while (!frontier.empty()) {
        std::pop_heap(frontier.begin(), frontier.end(), std::greater<>());
        int node = frontier.back();
        frontier.pop_back();
        order.push_back(node);
        for (int child : children[node]) {
            if (--indegree[child] == 0) {
                frontier.push_back(child);
                std::push_heap(frontier.begin(), frontier.end(), std::greater<>());
            }
        }
    }
    if (static_cast<int>(order.size()) != nodes) return {};
    return order;
}

bool is_acyclic(int nodes, const std::vector<std::pair<int, int>>& edges) {
    return !topological_order(nodes, edges).empty() || nodes == 0;
}

Dag::Dag(int nodes, std::vector<std::pair<int, int>> edge_list)
    : node_count(nodes), edges(std::move(edge_list)) {
    if (nodes < 1) {
        throw std::invalid_argument("Dag: needs at least one node");
    }
    for (const auto& [from, to] : edges) {
        if (from < 0 || from >= nodes || to < 0 || to >= nodes || from == to) {
            throw std::invalid_argument("Dag: invalid edge");
        }
    }
    topo_order = topological_order(nodes, edges);
    if (topo_order.empty()) {
        throw std::invalid_argument("Dag: edge list contains a cycle");
    }
}

std::vector<int> Dag::parents(int node) const {
    std::vector<int> out;
    for (const auto& [from, to] : edges) {
        if (to == node) out.push_back(from);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> Dag::children(int node) const {
    std::vector<int> out;
    for (const auto& [from, to] : edges) {
        if (from == node) out.push_back(to);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Dag::has_edge(int from, int to) const {
    return std::find(edges.begin(), edges.end(), std::make_pair(from, to)) != edges.end();
}

MixedGraph Dag::as_mixed() const {
    MixedGraph g(static_cast<std::size_t>(node_count));
    for (const auto& [from, to] : edges) {
        g.add_directed(from, to);
    }
    return g;
}

Dag random_dag(int nodes, int max_parents, double edge_prob, Rng& rng) {
    if (nodes < 1) {
        throw std::invalid_argument("random_dag: needs at least one node");
    }
    if (edge_prob < 0.0 || edge_prob > 1.0) {
        throw std::invalid_argument("random_dag: edge_prob must be in [0,1]");
    }
    std::vector<int> order(nodes);
    std::iota(order.begin(), order.end(), 0);
    for (int i = nodes - 1; i > 0; --i) {
        std::swap(order[i], order[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
    }
    std::vector<std::pair<int, int>> edges;
    for (int position = 1; position < nodes; ++position) {
        // Candidate parents in random order, truncated at max_parents.
        std::vector<int> candidates(order.begin(), order.begin() + position);
        for (int i = position - 1; i > 0; --i) {
            std::swap(candidates[i], candidates[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
        }
        int taken = 0;
        for (int parent : candidates) {
            if (taken >= max_parents) break;
            if (rng.next_double() < edge_prob) {
                edges.emplace_back(parent, order[position]);
                ++taken;
            }
        }
    }
    return Dag(nodes, std::move(edges));
}

}  // namespace privcd
