#include "privcd/sem.hpp"

#include <stdexcept>

#include "privcd/discretize.hpp"

namespace privcd {

LinearSem::LinearSem(Dag dag_in, std::vector<double> weights_in,
                     std::vector<double> noise_std_in)
    : dag(std::move(dag_in)), weights(std::move(weights_in)), noise_std(std::move(noise_std_in)) {
    if (weights.size() != dag.edges.size()) {
        throw std::invalid_argument("LinearSem: one weight per edge required");
    }
    if (noise_std.size() != static_cast<std::size_t>(dag.node_count)) {
        throw std::invalid_argument("LinearSem: one noise std per node required");
    }
    for (double s : noise_std) {
        if (!(s > 0.0)) {
            throw std::invalid_argument("LinearSem: noise std must be positive");
        }
    }
}

LinearSem random_sem(const Dag& dag, Rng& rng, double w_lo, double w_hi, double noise_std) {
    std::vector<double> weights;
    weights.reserve(dag.edges.size());
    for (std::size_t i = 0; i < dag.edges.size(); ++i) {
        double magnitude = w_lo + (w_hi - w_lo) * rng.next_double();
        double sign = rng.next_double() < 0.5 ? -1.0 : 1.0;
        weights.push_back(sign * magnitude);
    }
    return LinearSem(dag, std::move(weights),
                     std::vector<double>(static_cast<std::size_t>(dag.node_count), noise_std));
}

ContinuousTable sample_sem(const LinearSem& sem, std::size_t n, Rng& rng) {
    if (n < 1) {
        throw std::invalid_argument("sample_sem: n must be >= 1");
    }
    const int d = sem.dag.node_count;
    ContinuousTable table;
    table.columns.assign(static_cast<std::size_t>(d), std::vector<double>(n, 0.0));
    for (int i = 0; i < d; ++i) {
        table.names.push_back("V" + std::to_string(i));
    }
    // Incoming weighted edges per node for the topological sweep.
    std::vector<std::vector<std::pair<int, double>>> incoming(static_cast<std::size_t>(d));
    for (std::size_t e = 0; e < sem.dag.edges.size(); ++e) {
        auto [from, to] = sem.dag.edges[e];
        incoming[static_cast<std::size_t>(to)].emplace_back(from, sem.weights[e]);
    }
    for (std::size_t row = 0; row < n; ++row) {
        for (int node : sem.dag.topo_order) {
            double value = sem.noise_std[static_cast<std::size_t>(node)] * rng.next_gaussian();
            for (const auto& [parent, weight] : incoming[static_cast<std::size_t>(node)]) {
                value += weight * table.columns[static_cast<std::size_t>(parent)][row];
            }
            table.columns[static_cast<std::size_t>(node)][row] = value;
        }
    }
    return table;
}

SynthBenchmark make_benchmark(const std::string& name, const RngSeed& seed) {
    int nodes = 0;
    std::int64_t bins = 0;
    std::size_t rows = 0;
    if (name == "synth10") {
        nodes = 10;
        bins = 10;
        rows = 5000;
    } else if (name == "synth5") {
        nodes = 5;
        bins = 5;
        rows = 50000;
    } else {
        throw std::invalid_argument("make_benchmark: unknown benchmark " + name);
    }
    Rng structure_rng(derive_stream(seed, 0));
    Dag dag = random_dag(nodes, /*max_parents=*/3, /*edge_prob=*/0.4, structure_rng);
    LinearSem sem = random_sem(dag, structure_rng);
    Rng data_rng(derive_stream(seed, 1));
    ContinuousTable table = sample_sem(sem, rows, data_rng);
    SynthBenchmark out;
    out.data = discretize(table, std::vector<std::int64_t>(static_cast<std::size_t>(nodes), bins));
    out.truth = std::move(dag);
    return out;
}

}  // namespace privcd
