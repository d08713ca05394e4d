#pragma once

#include <string>

#include "privcd/dag.hpp"
#include "privcd/domain.hpp"
#include "privcd/rng.hpp"

namespace privcd {

// Linear Gaussian structural equation model over a DAG: in topological
// order, V_i = sum_j w_ji * V_j + N(0, noise_std_i^2), rows IID. The joint
// law factorizes over the graph (each variable depends on its parents only).
struct LinearSem {
    Dag dag;
    std::vector<double> weights;    // parallel to dag.edges
    std::vector<double> noise_std;  // per node, > 0

    LinearSem() = default;
    LinearSem(Dag dag_in, std::vector<double> weights_in, std::vector<double> noise_std_in);
};

// Edge weights uniform on +/-[w_lo, w_hi] (sign by fair coin), unit noise.
LinearSem random_sem(const Dag& dag, Rng& rng, double w_lo = 0.5, double w_hi = 2.0,
                     double noise_std = 1.0);

ContinuousTable sample_sem(const LinearSem& sem, std::size_t n, Rng& rng);

struct SynthBenchmark {
    Dataset data;
    Dag truth;
};

// synth10: 10 nodes, 10 uniform bins, 5000 rows; synth5: 5 nodes, 5 bins,
// 50000 rows. DAGs use max_parents = 3 and edge probability 0.4.
SynthBenchmark make_benchmark(const std::string& name, const RngSeed& seed);

}  // namespace privcd
