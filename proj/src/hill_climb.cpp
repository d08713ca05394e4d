#include "privcd/hill_climb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace privcd {

namespace {

constexpr double kImprovementFloor = 1e-9;

double node_loglik(const Dataset& ds, int node, const std::vector<int>& parents) {
    // Counts per (parent configuration, value); only observed configurations
    // matter for the likelihood.
    std::unordered_map<std::uint64_t, std::unordered_map<std::int64_t, double>> counts;
    std::unordered_map<std::uint64_t, double> totals;
    for (const auto& row : ds.rows) {
        std::uint64_t config = 0;
        for (int p : parents) {
            config = config * static_cast<std::uint64_t>(ds.domain.dims[p]) +
                     static_cast<std::uint64_t>(row[p]);
        }
        counts[config][row[node]] += 1.0;
        totals[config] += 1.0;
    }
    double loglik = 0.0;
    for (const auto& [config, values] : counts) {
        double total = totals[config];
        for (const auto& [value, count] : values) {
            loglik += count * std::log(count / total);
        }
    }
    return loglik;
}

struct ScoreCache {
    const Dataset& ds;
    double penalty_discount;
    // Keyed by (node, parent bitmask); arity is limited to 63 variables.
    std::map<std::pair<int, std::uint64_t>, double> cache;

    double get(int node, std::uint64_t mask) {
        auto key = std::make_pair(node, mask);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        std::vector<int> parents;
        for (int p = 0; p < static_cast<int>(ds.arity()); ++p) {
            if (mask & (1ULL << p)) parents.push_back(p);
        }
        double score = bic_node_score(ds, node, parents, penalty_discount);
        cache.emplace(key, score);
        return score;
    }
};

}  // namespace

double bic_node_score(const Dataset& ds, int node, const std::vector<int>& parents,
                      double penalty_discount) {
    double q = 1.0;
    for (int p : parents) q *= static_cast<double>(ds.domain.dims[p]);
    double free_params = q * static_cast<double>(ds.domain.dims[node] - 1);
    double penalty = penalty_discount * 0.5 * std::log(static_cast<double>(ds.n())) * free_params;
    return node_loglik(ds, node, parents) - penalty;
}

Dag bic_hill_climb(const Dataset& ds, double penalty_discount) {
    validate_dataset(ds);
    if (!(penalty_discount > 0.0)) {
        throw std::invalid_argument("bic_hill_climb: penalty_discount must be positive");
    }
    const int d = static_cast<int>(ds.arity());
    if (d > 63) {
        throw std::invalid_argument("bic_hill_climb: more than 63 variables unsupported");
    }

    ScoreCache scores{ds, penalty_discount, {}};
    std::vector<std::uint64_t> parent_mask(static_cast<std::size_t>(d), 0);
    std::vector<std::pair<int, int>> edges;

    auto acyclic_with = [&](const std::vector<std::pair<int, int>>& candidate) {
        return is_acyclic(d, candidate);
    };

    double current = 0.0;
    for (int i = 0; i < d; ++i) current += scores.get(i, 0);

    while (true) {
        double best_delta = kImprovementFloor;
        int best_kind = -1;  // 0 add, 1 delete, 2 reverse
        std::pair<int, int> best_edge{-1, -1};

        auto consider = [&](int kind, int from, int to, double delta,
                            const std::vector<std::pair<int, int>>& candidate) {
            if (delta > best_delta && acyclic_with(candidate)) {
                best_delta = delta;
                best_kind = kind;
                best_edge = {from, to};
            }
        };

        for (int from = 0; from < d; ++from) {
            for (int to = 0; to < d; ++to) {
                if (from == to) continue;
                bool forward = parent_mask[to] & (1ULL << from);
                bool backward = parent_mask[from] & (1ULL << to);
                if (!forward && !backward) {
                    // addition from -> to
                    double delta = scores.get(to, parent_mask[to] | (1ULL << from)) -
                                   scores.get(to, parent_mask[to]);
                    if (delta > best_delta) {
                        auto candidate = edges;
                        candidate.emplace_back(from, to);
                        consider(0, from, to, delta, candidate);
                    }
                } else if (forward) {
                    // deletion of from -> to
                    double delta = scores.get(to, parent_mask[to] & ~(1ULL << from)) -
                                   scores.get(to, parent_mask[to]);
                    if (delta > best_delta) {
                        auto candidate = edges;
                        candidate.erase(
                            std::find(candidate.begin(), candidate.end(), std::pair{from, to}));
                        consider(1, from, to, delta, candidate);
                    }
                    // reversal to from <- to
                    double delta_rev = scores.get(to, parent_mask[to] & ~(1ULL << from)) -
                                       scores.get(to, parent_mask[to]) +
                                       scores.get(from, parent_mask[from] | (1ULL << to)) -
                                       scores.get(from, parent_mask[from]);
                    if (delta_rev > best_delta) {
                        auto candidate = edges;
                        *std::find(candidate.begin(), candidate.end(), std::pair{from, to}) =
                            {to, from};
                        consider(2, from, to, delta_rev, candidate);
                    }
                }
            }
        }

        if (best_kind == -1) break;
        auto [from, to] = best_edge;
        if (best_kind == 0) {
            edges.emplace_back(from, to);
            parent_mask[to] |= 1ULL << from;
        } else if (best_kind == 1) {
            edges.erase(std::find(edges.begin(), edges.end(), std::pair{from, to}));
            parent_mask[to] &= ~(1ULL << from);
        } else {
            *std::find(edges.begin(), edges.end(), std::pair{from, to}) = {to, from};
            parent_mask[to] &= ~(1ULL << from);
            parent_mask[from] |= 1ULL << to;
        }
        current += best_delta;
    }

    return Dag(d, std::move(edges));
}

}  // namespace privcd
