#include "privcd/metrics.hpp"

#include <stdexcept>

#include "privcd/special.hpp"

namespace privcd {

namespace {

enum class EdgeClass { none, undirected, forward, backward };

EdgeClass classify(const MixedGraph& g, int a, int b) {
    if (g.has_undirected(a, b)) return EdgeClass::undirected;
    if (g.has_directed(a, b)) return EdgeClass::forward;
    if (g.has_directed(b, a)) return EdgeClass::backward;
    return EdgeClass::none;
}

}  // namespace

int shd(const MixedGraph& truth, const MixedGraph& estimate) {
    if (truth.node_count() != estimate.node_count()) {
        throw std::invalid_argument("shd: node sets differ");
    }
    const int n = static_cast<int>(truth.node_count());
    int distance = 0;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (classify(truth, a, b) != classify(estimate, a, b)) ++distance;
        }
    }
    return distance;
}

F1Result skeleton_f1(const MixedGraph& truth, const MixedGraph& estimate) {
    if (truth.node_count() != estimate.node_count()) {
        throw std::invalid_argument("skeleton_f1: node sets differ");
    }
    const int n = static_cast<int>(truth.node_count());
    double tp = 0, fp = 0, fn = 0;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            bool in_truth = truth.adjacent(a, b);
            bool in_estimate = estimate.adjacent(a, b);
            tp += in_truth && in_estimate;
            fp += !in_truth && in_estimate;
            fn += in_truth && !in_estimate;
        }
    }
    F1Result result;
    result.precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    result.recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    result.f1 = result.precision + result.recall > 0
                    ? 2.0 * result.precision * result.recall /
                          (result.precision + result.recall)
                    : 0.0;
    return result;
}

double weighted_accuracy(const std::vector<PairOutcome>& outcomes) {
    double total = 0.0;
    double correct = 0.0;
    for (const auto& outcome : outcomes) {
        if (outcome.weight < 0.0) {
            throw std::invalid_argument("weighted_accuracy: negative weight");
        }
        total += outcome.weight;
        if (outcome.correct) correct += outcome.weight;
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("weighted_accuracy: weights sum to zero");
    }
    return correct / total;
}

std::pair<double, double> clopper_pearson(std::int64_t successes, std::int64_t trials,
                                          double confidence) {
    if (trials < 1 || successes < 0 || successes > trials) {
        throw std::invalid_argument("clopper_pearson: invalid counts");
    }
    if (confidence <= 0.0 || confidence >= 1.0) {
        throw std::invalid_argument("clopper_pearson: confidence must be in (0,1)");
    }
    const double alpha = 1.0 - confidence;
    const double s = static_cast<double>(successes);
    const double n = static_cast<double>(trials);
    double lo = successes == 0 ? 0.0 : beta_inc_inv(s, n - s + 1.0, alpha / 2.0);
    double hi = successes == trials ? 1.0 : beta_inc_inv(s + 1.0, n - s, 1.0 - alpha / 2.0);
    return {lo, hi};
}

}  // namespace privcd
