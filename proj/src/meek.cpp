#include "privcd/meek.hpp"

namespace privcd {

bool orient_if_possible(MixedGraph& g, int from, int to) {
    if (!g.has_undirected(from, to)) return false;
    g.orient(from, to);
    return true;
}

namespace {

bool meek_pass(MixedGraph& g) {
    const int n = static_cast<int>(g.node_count());
    bool changed = false;

    // R1: a->b, b-c, a and c nonadjacent => b->c.
    for (int b = 0; b < n; ++b) {
        for (int a : g.parents(b)) {
            for (int c : g.undirected_neighbors(b)) {
                if (c != a && !g.adjacent(a, c)) {
                    changed |= orient_if_possible(g, b, c);
                }
            }
        }
    }

    // R2: a->b->c with a-c => a->c.
    for (int b = 0; b < n; ++b) {
        for (int a : g.parents(b)) {
            for (int c : g.children(b)) {
                if (c != a && g.has_undirected(a, c)) {
                    changed |= orient_if_possible(g, a, c);
                }
            }
        }
    }

    // R3: a-b, a-c, a-d, c->b, d->b, c and d nonadjacent => a->b.
    for (int a = 0; a < n; ++a) {
        auto neighbors = g.undirected_neighbors(a);
        for (int b : neighbors) {
            bool oriented = false;
            for (std::size_t i = 0; i < neighbors.size() && !oriented; ++i) {
                int c = neighbors[i];
                if (c == b || !g.has_directed(c, b)) continue;
                for (std::size_t j = 0; j < neighbors.size() && !oriented; ++j) {
                    int d = neighbors[j];
                    if (d == b || d == c || !g.has_directed(d, b)) continue;
                    if (!g.adjacent(c, d)) {
                        oriented = orient_if_possible(g, a, b);
                        changed |= oriented;
                    }
                }
            }
        }
    }

    // R4: a-b, a-c, c->d, d->b, b and c nonadjacent, a and d adjacent => a->b.
    for (int a = 0; a < n; ++a) {
        for (int b : g.undirected_neighbors(a)) {
            bool oriented = false;
            for (int c : g.undirected_neighbors(a)) {
                if (c == b || g.adjacent(b, c)) continue;
                for (int d : g.children(c)) {
                    if (d == a || d == b) continue;
                    if (g.has_directed(d, b) && g.adjacent(a, d)) {
                        oriented = orient_if_possible(g, a, b);
                        changed |= oriented;
                        break;
                    }
                }
                if (oriented) break;
            }
        }
    }

    return changed;
}

}  // namespace

void apply_meek_rules(MixedGraph& g) {
    while (meek_pass(g)) {
    }
}

MixedGraph cpdag_of(const Dag& dag) {
    MixedGraph g(static_cast<std::size_t>(dag.node_count));
    for (const auto& [from, to] : dag.edges) {
        g.add_undirected(from, to);
    }
    // V-structures: i -> k <- j with i, j nonadjacent in the DAG.
    for (int k = 0; k < dag.node_count; ++k) {
        auto parents = dag.parents(k);
        for (std::size_t i = 0; i < parents.size(); ++i) {
            for (std::size_t j = i + 1; j < parents.size(); ++j) {
                int a = parents[i];
                int b = parents[j];
                if (!dag.has_edge(a, b) && !dag.has_edge(b, a)) {
                    orient_if_possible(g, a, k);
                    orient_if_possible(g, b, k);
                }
            }
        }
    }
    apply_meek_rules(g);
    return g;
}

}  // namespace privcd
