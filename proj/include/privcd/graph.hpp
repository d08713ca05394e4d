#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace privcd {

// Adjacency structure with directed and undirected edges (a PDAG container;
// PC outputs are CPDAG-shaped). At most one edge per unordered pair, no
// self-loops, and the directed/undirected sets are disjoint.
class MixedGraph {
public:
    MixedGraph() = default;
    explicit MixedGraph(std::vector<std::string> names);
    explicit MixedGraph(std::size_t node_count);

    std::size_t node_count() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

    void add_directed(int from, int to);
    void add_undirected(int a, int b);
    void remove_edge(int a, int b);

    // Turns the undirected edge a-b into a->b.
    void orient(int from, int to);

    bool has_directed(int from, int to) const;
    bool has_undirected(int a, int b) const;
    bool adjacent(int a, int b) const;

    std::vector<int> adjacent_nodes(int node) const;
    std::vector<int> parents(int node) const;
    std::vector<int> children(int node) const;
    std::vector<int> undirected_neighbors(int node) const;

    const std::set<std::pair<int, int>>& directed_edges() const { return directed_; }
    // Stored with first < second.
    const std::set<std::pair<int, int>>& undirected_edges() const { return undirected_; }

    std::size_t edge_count() const { return directed_.size() + undirected_.size(); }

    std::string to_json() const;
    static MixedGraph from_json(const std::string& text);

    friend bool operator==(const MixedGraph&, const MixedGraph&) = default;

private:
    void check_node(int node) const;

    std::vector<std::string> names_;
    std::set<std::pair<int, int>> directed_;
    std::set<std::pair<int, int>> undirected_;
};

}  // namespace privcd
