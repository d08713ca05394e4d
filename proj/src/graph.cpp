#include "privcd/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace privcd {

MixedGraph::MixedGraph(std::vector<std::string> names) : names_(std::move(names)) {}

MixedGraph::MixedGraph(std::size_t node_count) {
    names_.reserve(node_count);
    for (std::size_t i = 0; i < node_count; ++i) {
        names_.push_back("V" + std::to_string(i));
    }
}

void MixedGraph::check_node(int node) const {
    if (node < 0 || static_cast<std::size_t>(node) >= names_.size()) {
        throw std::out_of_range("MixedGraph: node index out of range");
    }
}

void MixedGraph::add_directed(int from, int to) {
    check_node(from);
    check_node(to);
    if (from == to) {
        throw std::invalid_argument("MixedGraph: self-loop");
    }
    if (adjacent(from, to)) {
        throw std::invalid_argument("MixedGraph: pair already has an edge");
    }
    directed_.emplace(from, to);
}

void MixedGraph::add_undirected(int a, int b) {
    check_node(a);
    check_node(b);
    if (a == b) {
        throw std::invalid_argument("MixedGraph: self-loop");
    }
    if (adjacent(a, b)) {
        throw std::invalid_argument("MixedGraph: pair already has an edge");
    }
    undirected_.emplace(std::min(a, b), std::max(a, b));
}

void MixedGraph::remove_edge(int a, int b) {
    directed_.erase({a, b});
    directed_.erase({b, a});
    undirected_.erase({std::min(a, b), std::max(a, b)});
}

void MixedGraph::orient(int from, int to) {
    if (!has_undirected(from, to)) {
        throw std::invalid_argument("MixedGraph: orient requires an undirected edge");
    }
    undirected_.erase({std::min(from, to), std::max(from, to)});
    directed_.emplace(from, to);
}

bool MixedGraph::has_directed(int from, int to) const {
    return directed_.count({from, to}) > 0;
}

bool MixedGraph::has_undirected(int a, int b) const {
    return undirected_.count({std::min(a, b), std::max(a, b)}) > 0;
}

bool MixedGraph::adjacent(int a, int b) const {
    return has_undirected(a, b) || has_directed(a, b) || has_directed(b, a);
}

std::vector<int> MixedGraph::adjacent_nodes(int node) const {
    check_node(node);
    std::vector<int> out;
    for (int other = 0; other < static_cast<int>(node_count()); ++other) {
        if (other != node && adjacent(node, other)) out.push_back(other);
    }
    return out;
}

std::vector<int> MixedGraph::parents(int node) const {
    check_node(node);
    std::vector<int> out;
    for (const auto& [from, to] : directed_) {
        if (to == node) out.push_back(from);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> MixedGraph::children(int node) const {
    check_node(node);
    std::vector<int> out;
    for (const auto& [from, to] : directed_) {
        if (from == node) out.push_back(to);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> MixedGraph::undirected_neighbors(int node) const {
    check_node(node);
    std::vector<int> out;
    for (const auto& [a, b] : undirected_) {
        if (a == node) out.push_back(b);
        if (b == node) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string MixedGraph::to_json() const {
    nlohmann::json j;
    j["nodes"] = names_;
    j["edges"] = nlohmann::json::array();
    for (const auto& [from, to] : directed_) {
        j["edges"].push_back(
            {{"from", names_[from]}, {"to", names_[to]}, {"directed", true}});
    }
    for (const auto& [a, b] : undirected_) {
        j["edges"].push_back({{"from", names_[a]}, {"to", names_[b]}, {"directed", false}});
    }
    return j.dump(2);
}

MixedGraph MixedGraph::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    MixedGraph g(j.at("nodes").get<std::vector<std::string>>());
    auto index_of = [&](const std::string& name) {
        auto it = std::find(g.names_.begin(), g.names_.end(), name);
        if (it == g.names_.end()) {
            throw std::invalid_argument("MixedGraph: unknown node name " + name);
        }
        return static_cast<int>(it - g.names_.begin());
    };
    for (const auto& edge : j.at("edges")) {
        int from = index_of(edge.at("from").get<std::string>());
        int to = index_of(edge.at("to").get<std::string>());
        if (edge.at("directed").get<bool>()) {
            g.add_directed(from, to);
        } else {
            g.add_undirected(from, to);
        }
    }
    return g;
}

}  // namespace privcd
