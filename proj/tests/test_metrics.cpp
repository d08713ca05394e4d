#include <cmath>

#include "doctest.h"
#include "privcd/metrics.hpp"
#include "privcd/rng.hpp"

using namespace privcd;

namespace {

// Independent per-pair oracle over a coded adjacency representation:
// 0 none, 1 undirected, 2 a->b, 3 b->a (for a < b).
int edge_code(const MixedGraph& g, int a, int b) {
    if (g.has_undirected(a, b)) return 1;
    if (g.has_directed(a, b)) return 2;
    if (g.has_directed(b, a)) return 3;
    return 0;
}

int shd_oracle(const MixedGraph& truth, const MixedGraph& estimate) {
    int total = 0;
    for (int a = 0; a < static_cast<int>(truth.node_count()); ++a) {
        for (int b = a + 1; b < static_cast<int>(truth.node_count()); ++b) {
            total += edge_code(truth, a, b) != edge_code(estimate, a, b);
        }
    }
    return total;
}

MixedGraph random_mixed(int nodes, Rng& rng) {
    MixedGraph g(static_cast<std::size_t>(nodes));
    for (int a = 0; a < nodes; ++a) {
        for (int b = a + 1; b < nodes; ++b) {
            switch (rng.next_below(4)) {
                case 1: g.add_undirected(a, b); break;
                case 2: g.add_directed(a, b); break;
                case 3: g.add_directed(b, a); break;
                default: break;
            }
        }
    }
    return g;
}

}  // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("shd basics") {
    MixedGraph a({"A", "B", "C"});
    a.add_directed(0, 1);
    a.add_directed(1, 2);
    CHECK(shd(a, a) == 0);

    MixedGraph reversed({"A", "B", "C"});
    reversed.add_directed(1, 0);
    reversed.add_directed(1, 2);
    CHECK(shd(a, reversed) == 1);

    MixedGraph missing({"A", "B", "C"});
    missing.add_directed(0, 1);
    CHECK(shd(a, missing) == 1);

    MixedGraph undirected_mismatch({"A", "B", "C"});
    undirected_mismatch.add_undirected(0, 1);
    undirected_mismatch.add_directed(1, 2);
    CHECK(shd(a, undirected_mismatch) == 1);
}

TEST_CASE("shd is symmetric, zero on equals, and bounded") {
    Rng rng(RngSeed{51, {}});
    for (int trial = 0; trial < 200; ++trial) {
        int nodes = 2 + static_cast<int>(rng.next_below(7));
        auto g = random_mixed(nodes, rng);
        auto h = random_mixed(nodes, rng);
        CHECK(shd(g, g) == 0);
        CHECK(shd(g, h) == shd(h, g));
        CHECK(shd(g, h) <= nodes * (nodes - 1) / 2);
    }
}

TEST_CASE("shd equals the per-pair oracle on 1000 random graph pairs") {
    Rng rng(RngSeed{52, {}});
    for (int trial = 0; trial < 1000; ++trial) {
        int nodes = 2 + static_cast<int>(rng.next_below(7));  // up to 8
        auto g = random_mixed(nodes, rng);
        auto h = random_mixed(nodes, rng);
        CHECK(shd(g, h) == shd_oracle(g, h));
    }
}

TEST_CASE("skeleton f1 worked examples") {
    MixedGraph truth({"A", "B", "C"});
    truth.add_undirected(0, 1);
    truth.add_undirected(1, 2);

    CHECK(skeleton_f1(truth, truth).f1 == doctest::Approx(1.0));

    MixedGraph estimate({"A", "B", "C"});
    estimate.add_undirected(0, 1);
    estimate.add_undirected(0, 2);
    auto result = skeleton_f1(truth, estimate);
    CHECK(result.precision == doctest::Approx(0.5));
    CHECK(result.recall == doctest::Approx(0.5));
    CHECK(result.f1 == doctest::Approx(0.5));

    MixedGraph empty({"A", "B", "C"});
    CHECK(skeleton_f1(truth, empty).f1 == doctest::Approx(0.0));
}

TEST_CASE("skeleton f1 ignores orientation") {
    MixedGraph truth({"A", "B"});
    truth.add_directed(0, 1);
    MixedGraph estimate({"A", "B"});
    estimate.add_undirected(0, 1);
    CHECK(skeleton_f1(truth, estimate).f1 == doctest::Approx(1.0));
}

TEST_CASE("weighted accuracy arithmetic") {
    std::vector<PairOutcome> outcomes = {{"a", 1.0, true}, {"b", 0.5, false}};
    CHECK(weighted_accuracy(outcomes) == doctest::Approx(1.0 / 1.5).epsilon(1e-12));

    std::vector<PairOutcome> all_correct = {{"a", 0.3, true}, {"b", 2.0, true}};
    CHECK(weighted_accuracy(all_correct) == doctest::Approx(1.0));

    std::vector<PairOutcome> equal = {{"a", 1.0, true}, {"b", 1.0, false}, {"c", 1.0, true}};
    CHECK(weighted_accuracy(equal) == doctest::Approx(2.0 / 3.0));

    std::vector<PairOutcome> zero = {{"a", 0.0, true}};
    CHECK_THROWS(weighted_accuracy(zero));
}

TEST_CASE("weighted accuracy is invariant under uniform weight scaling") {
    std::vector<PairOutcome> outcomes = {
        {"a", 0.25, true}, {"b", 1.5, false}, {"c", 0.75, true}};
    auto scaled = outcomes;
    for (auto& outcome : scaled) outcome.weight *= 7.3;
    CHECK(weighted_accuracy(outcomes) == doctest::Approx(weighted_accuracy(scaled)).epsilon(1e-12));
}

TEST_CASE("clopper-pearson closed forms at the extremes") {
    auto [lo_full, hi_full] = clopper_pearson(10, 10, 0.95);
    CHECK(hi_full == 1.0);
    CHECK(lo_full == doctest::Approx(std::pow(0.025, 0.1)).epsilon(1e-8));
    CHECK(lo_full == doctest::Approx(0.69150).epsilon(1e-4));

    auto [lo_zero, hi_zero] = clopper_pearson(0, 10, 0.95);
    CHECK(lo_zero == 0.0);
    CHECK(hi_zero == doctest::Approx(1.0 - std::pow(0.025, 0.1)).epsilon(1e-8));
    CHECK(hi_zero == doctest::Approx(0.30850).epsilon(1e-4));
}

TEST_CASE("clopper-pearson at s=5, n=10 contains 0.5 symmetrically") {
    auto [lo, hi] = clopper_pearson(5, 10, 0.95);
    CHECK(lo < 0.5);
    CHECK(hi > 0.5);
    CHECK(lo == doctest::Approx(1.0 - hi).epsilon(1e-9));
}

TEST_CASE("80 percent interval nests inside 95 percent for all n <= 50") {
    for (std::int64_t n = 1; n <= 50; ++n) {
        for (std::int64_t s = 0; s <= n; ++s) {
            auto [lo80, hi80] = clopper_pearson(s, n, 0.80);
            auto [lo95, hi95] = clopper_pearson(s, n, 0.95);
            CHECK(lo95 <= lo80 + 1e-12);
            CHECK(hi80 <= hi95 + 1e-12);
        }
    }
}

TEST_SUITE_END();
