#include <cmath>

#include "doctest.h"
#include "privcd/dag.hpp"
#include "privcd/sem.hpp"

using namespace privcd;

namespace {

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= a.size();
    mb /= b.size();
    double cov = 0, va = 0, vb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
    }
    return cov / std::sqrt(va * vb);
}

}  // namespace

TEST_SUITE_BEGIN("synthgen");

TEST_CASE("random_dag edge_prob extremes") {
    Rng rng(RngSeed{1, {}});
    CHECK(random_dag(4, 10, 0.0, rng).edges.empty());
    auto full = random_dag(3, 100, 1.0, rng);
    CHECK(full.edges.size() == 3);  // full triangle over 3 nodes
}

TEST_CASE("random_dag respects max_parents") {
    Rng rng(RngSeed{2, {}});
    for (int trial = 0; trial < 1000; ++trial) {
        auto dag = random_dag(10, 3, 0.8, rng);
        for (int node = 0; node < 10; ++node) {
            CHECK(dag.parents(node).size() <= 3);
        }
    }
}

TEST_CASE("random_dag output is acyclic over many configurations") {
    Rng rng(RngSeed{3, {}});
    for (int trial = 0; trial < 10000; ++trial) {
        int nodes = 2 + static_cast<int>(rng.next_below(7));
        int max_parents = 1 + static_cast<int>(rng.next_below(4));
        double edge_prob = rng.next_double();
        auto dag = random_dag(nodes, max_parents, edge_prob, rng);
        CHECK(is_acyclic(dag.node_count, dag.edges));
    }
}

TEST_CASE("sample_sem: zero weights give independent gaussians") {
    Dag dag(4, {{0, 1}, {1, 2}, {2, 3}});
    LinearSem sem(dag, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0, 1.0});
    Rng rng(RngSeed{4, {}});
    auto table = sample_sem(sem, 10000, rng);
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = a + 1; b < 4; ++b) {
            CHECK(std::fabs(correlation(table.columns[a], table.columns[b])) < 0.05);
        }
    }
}

TEST_CASE("sample_sem: chain variance adds up") {
    Dag dag(2, {{0, 1}});
    LinearSem sem(dag, {1.0}, {1.0, 1.0});
    Rng rng(RngSeed{5, {}});
    auto table = sample_sem(sem, 10000, rng);
    double mean = 0;
    for (double v : table.columns[1]) mean += v;
    mean /= table.n();
    double var = 0;
    for (double v : table.columns[1]) var += (v - mean) * (v - mean);
    var /= table.n();
    CHECK(var == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("sample_sem: single row is finite") {
    Dag dag(3, {{0, 2}, {1, 2}});
    Rng weights_rng(RngSeed{6, {}});
    auto sem = random_sem(dag, weights_rng);
    Rng rng(RngSeed{7, {}});
    auto table = sample_sem(sem, 1, rng);
    CHECK(table.n() == 1);
    for (const auto& column : table.columns) {
        CHECK(std::isfinite(column[0]));
    }
}

TEST_CASE("collider: marginally independent parents, dependent given child") {
    // X -> Z <- Y with unit weights.
    Dag dag(3, {{0, 2}, {1, 2}});
    LinearSem sem(dag, {1.0, 1.0}, {1.0, 1.0, 1.0});
    Rng rng(RngSeed{8, {}});
    auto table = sample_sem(sem, 10000, rng);
    CHECK(std::fabs(correlation(table.columns[0], table.columns[1])) < 0.05);
    // Partial correlation of X,Y given Z: regress both on Z, correlate residuals.
    const auto& x = table.columns[0];
    const auto& y = table.columns[1];
    const auto& z = table.columns[2];
    auto residual = [&](const std::vector<double>& v) {
        double beta = correlation(v, z);
        double sv = 0, sz = 0, mv = 0, mz = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            mv += v[i];
            mz += z[i];
        }
        mv /= v.size();
        mz /= z.size();
        for (std::size_t i = 0; i < v.size(); ++i) {
            sv += (v[i] - mv) * (v[i] - mv);
            sz += (z[i] - mz) * (z[i] - mz);
        }
        double slope = beta * std::sqrt(sv / sz);
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] - mv - slope * (z[i] - mz);
        return r;
    };
    double partial = correlation(residual(x), residual(y));
    CHECK(std::fabs(partial) > 0.3);  // strongly dependent given the collider
}

TEST_CASE("make_benchmark shapes follow the named presets") {
    auto synth10 = make_benchmark("synth10", RngSeed{42, {}});
    CHECK(synth10.data.arity() == 10);
    CHECK(synth10.data.n() == 5000);
    for (auto k : synth10.data.domain.dims) CHECK(k == 10);
    CHECK(synth10.truth.node_count == 10);

    auto synth5 = make_benchmark("synth5", RngSeed{42, {}});
    CHECK(synth5.data.arity() == 5);
    CHECK(synth5.data.n() == 50000);
    for (auto k : synth5.data.domain.dims) CHECK(k == 5);

    CHECK_THROWS(make_benchmark("synth7", RngSeed{42, {}}));
}

TEST_CASE("make_benchmark is deterministic in the seed") {
    auto a = make_benchmark("synth10", RngSeed{17, {}});
    auto b = make_benchmark("synth10", RngSeed{17, {}});
    CHECK(a.data.rows == b.data.rows);
    CHECK(a.truth.edges == b.truth.edges);
    auto c = make_benchmark("synth10", RngSeed{18, {}});
    CHECK(a.data.rows != c.data.rows);
}

TEST_SUITE_END();
