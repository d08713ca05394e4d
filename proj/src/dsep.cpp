#include "privcd/dsep.hpp"

#include <array>
#include <deque>
#include <stdexcept>

namespace privcd {

bool d_separated(const Dag& dag, int x, int y, const std::vector<int>& cond) {
    const int n = dag.node_count;
    if (x < 0 || x >= n || y < 0 || y >= n || x == y) {
        throw std::invalid_argument("d_separated: invalid node pair");
    }
    std::vector<bool> in_cond(n, false);
    for (int z : cond) {
        if (z < 0 || z >= n || z == x || z == y) {
            throw std::invalid_argument("d_separated: invalid conditioning set");
        }
        in_cond[z] = true;
    }

    std::vector<std::vector<int>> parents(n), children(n);
    for (const auto& [from, to] : dag.edges) {
        parents[to].push_back(from);
        children[from].push_back(to);
    }

    // Ancestors of the conditioning set (including the set itself).
    std::vector<bool> anc(n, false);
    std::deque<int> queue;
    for (int z = 0; z < n; ++z) {
        if (in_cond[z]) {
            anc[z] = true;
            queue.push_back(z);
        }
    }
    while (!queue.empty()) {
        int node = queue.front();
        queue.pop_front();
        for (int parent : parents[node]) {
            if (!anc[parent]) {
                anc[parent] = true;
                queue.push_back(parent);
            }
        }
    }

    // Active-trail search over (node, arrival direction) states:
    // direction 0 = arrived from a child (moving up), 1 = from a parent.
    std::vector<std::array<bool, 2>> visited(n, {false, false});
    std::deque<std::pair<int, int>> frontier;
    frontier.emplace_back(x, 0);
    while (!frontier.empty()) {
        auto [node, dir] = frontier.front();
        frontier.pop_front();
        if (visited[node][dir]) continue;
        visited[node][dir] = true;
        if (!in_cond[node] && node == y) return false;

        if (dir == 0) {
            if (!in_cond[node]) {
                for (int p : parents[node]) frontier.emplace_back(p, 0);
                for (int c : children[node]) frontier.emplace_back(c, 1);
            }
        } else {
            if (!in_cond[node]) {
                for (int c : children[node]) frontier.emplace_back(c, 1);
            }
            if (anc[node]) {
                // Collider (or its descendant) meets the conditioning set.
                for (int p : parents[node]) frontier.emplace_back(p, 0);
            }
        }
    }
    return true;
}

}  // namespace privcd
