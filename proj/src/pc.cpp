#include "privcd/pc.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "privcd/meek.hpp"

namespace privcd {

namespace {

// Lexicographic size-m subsets of `pool`, invoking fn(subset) until it
// returns true; returns whether any call did.
template <typename Fn>
bool for_each_subset(const std::vector<int>& pool, std::size_t m, Fn&& fn) {
    if (m > pool.size()) return false;
    std::vector<std::size_t> pick(m);
    for (std::size_t i = 0; i < m; ++i) pick[i] = i;
    std::vector<int> subset(m);
    while (true) {
        for (std::size_t i = 0; i < m; ++i) subset[i] = pool[pick[i]];
        if (fn(subset)) return true;
        // advance combination
        std::size_t i = m;
        while (i > 0) {
            --i;
            if (pick[i] != i + pool.size() - m) {
                ++pick[i];
                for (std::size_t j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
                break;
            }
            if (i == 0) return false;
        }
        if (m == 0) return false;
    }
}

}  // namespace

MixedGraph pc_from_oracle(CiOracle& oracle, const std::vector<std::string>& names,
                          const PcOptions& options, PcDiagnostics* diagnostics) {
    const int n = static_cast<int>(oracle.variable_count());
    if (n < 2) {
        throw std::invalid_argument("pc: needs at least two variables");
    }
    if (names.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("pc: one name per variable required");
    }

    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            adj[i][j] = i != j;
        }
    }
    std::map<std::pair<int, int>, std::vector<int>> sepsets;

    auto neighbors_of = [&](const std::vector<std::vector<bool>>& matrix, int node,
                            int excluded) {
        std::vector<int> out;
        for (int other = 0; other < n; ++other) {
            if (other != node && other != excluded && matrix[node][other]) out.push_back(other);
        }
        return out;
    };

    const int max_level = options.max_cond_size.value_or(n - 2);
    for (int level = 0; level <= max_level; ++level) {
        // PC-stable: conditioning sets come from the snapshot taken at the
        // start of the level; removals land after the level finishes.
        const auto snapshot = adj;
        bool any_candidate = false;
        std::vector<std::pair<int, int>> to_remove;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (!adj[i][j]) continue;
                bool separated = false;
                for (int side = 0; side < 2 && !separated; ++side) {
                    if (level == 0 && side == 1) break;  // empty set already tested
                    int a = side == 0 ? i : j;
                    int b = side == 0 ? j : i;
                    auto pool = neighbors_of(snapshot, a, b);
                    if (pool.size() < static_cast<std::size_t>(level)) continue;
                    any_candidate = true;
                    separated = for_each_subset(
                        pool, static_cast<std::size_t>(level), [&](const std::vector<int>& s) {
                            auto result = oracle.test(a, b, s);
                            if (result.independent) {
                                sepsets[{i, j}] = s;
                                if (diagnostics) {
                                    diagnostics->sepsets[{i, j}] = s;
                                    diagnostics->removal_p[{i, j}] = result.p_value;
                                }
                                return true;
                            }
                            return false;
                        });
                }
                if (separated) to_remove.emplace_back(i, j);
            }
        }
        for (const auto& [i, j] : to_remove) {
            adj[i][j] = adj[j][i] = false;
        }
        if (!any_candidate) break;
    }

    MixedGraph g(names);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (adj[i][j]) g.add_undirected(i, j);
        }
    }

    // V-structures: i -> k <- j for nonadjacent i, j whose separating set
    // does not contain the common neighbor k.
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            if (i == k || !adj[i][k]) continue;
            for (int j = i + 1; j < n; ++j) {
                if (j == k || !adj[j][k] || adj[i][j]) continue;
                auto it = sepsets.find({i, j});
                if (it == sepsets.end()) continue;
                if (std::find(it->second.begin(), it->second.end(), k) == it->second.end()) {
                    orient_if_possible(g, i, k);
                    orient_if_possible(g, j, k);
                }
            }
        }
    }

    apply_meek_rules(g);
    return g;
}

MixedGraph pc(const Dataset& ds, const CiTestConfig& cfg, const PcOptions& options,
              PcDiagnostics* diagnostics) {
    DataCiOracle oracle(ds, cfg);
    return pc_from_oracle(oracle, ds.domain.names, options, diagnostics);
}

MixedGraph pc_with_oracle(const Dag& dag) {
    DsepOracle oracle(dag);
    std::vector<std::string> names;
    for (int i = 0; i < dag.node_count; ++i) names.push_back("V" + std::to_string(i));
    return pc_from_oracle(oracle, names);
}

}  // namespace privcd
