#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "privcd/graph.hpp"

namespace privcd {

// Structural Hamming distance: per unordered pair, 0 when edge presence and
// orientation class agree, 1 for a missing, extra, reversed or
// directed-vs-undirected mismatch. Node sets must match.
int shd(const MixedGraph& truth, const MixedGraph& estimate);

struct F1Result {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Precision/recall/F1 on the undirected adjacency structure; F1 is defined
// as 0 when precision + recall is 0.
F1Result skeleton_f1(const MixedGraph& truth, const MixedGraph& estimate);

struct PairOutcome {
    std::string pair_id;
    double weight = 1.0;
    bool correct = false;
};

// Weight-averaged share of correct forced decisions.
double weighted_accuracy(const std::vector<PairOutcome>& outcomes);

// Exact Clopper-Pearson binomial interval: Beta(s, n-s+1) / Beta(s+1, n-s)
// quantiles solved by bisection on the regularized incomplete beta. s = 0
// pins the lower bound at 0, s = n pins the upper bound at 1.
std::pair<double, double> clopper_pearson(std::int64_t successes, std::int64_t trials,
                                          double confidence);

}  // namespace privcd
