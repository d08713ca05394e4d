#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "privcd/ci.hpp"
#include "privcd/dag.hpp"
#include "privcd/domain.hpp"
#include "privcd/mechanism.hpp"
#include "privcd/pairs_io.hpp"
#include "privcd/rng.hpp"

namespace privcd {

// Either a multidimensional dataset (file or synthetic, with a ground-truth
// graph when known) or a directory of cause-effect pairs.
struct DatasetSpec {
    std::string id;
    std::string path;       // dataset CSV (+ dims sidecar)
    std::string synth;      // "synth5" | "synth10"
    std::string pairs_dir;  // directory with pair files + pairmeta.txt
    std::string truth_path; // ground-truth graph JSON for file datasets
};

struct AlgorithmSpec {
    std::string algo;  // pc | bic | reci | igci | cds | anm
    CiTestKind test = CiTestKind::fisher_z;
    double alpha = 0.05;
    double penalty_discount = 1.0;

    std::string id() const;
    bool pairwise() const;
};

struct ExperimentConfig {
    std::uint64_t seed = 0;
    std::vector<DatasetSpec> datasets;
    std::vector<double> levels = {0.05, 0.1, 0.5};
    std::vector<MechanismSpec> mechanisms;  // privacy field left empty; levels fill it
    std::vector<AlgorithmSpec> algorithms;
    int runs = 5;
    std::string output_dir = "out";
    std::string shd_target = "cpdag";  // or "dag"
    bool emit_svg = true;
};

ExperimentConfig load_experiment_config(const std::string& path);

// One (dataset x mechanism x level x algorithm x repetition) result. The
// baseline cells carry mechanism "no_noise" and no level. Infeasible cells
// survive as records with a skip reason and no metrics.
struct RunRecord {
    std::string dataset_id;
    std::string mechanism_id;
    std::optional<double> level;
    std::string algorithm_id;
    int repetition = 0;
    std::map<std::string, double> metrics;
    double wall_time_s = 0.0;
    std::string seed_path;  // "cell=<c>/rep=<r>" provenance
    std::string skip_reason;

    bool skipped() const { return !skip_reason.empty(); }
};

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

struct SummaryRow {
    std::string dataset_id;
    std::string mechanism_id;
    std::optional<double> level;
    std::string algorithm_id;
    std::string metric;
    int count = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::map<double, int> histogram;  // value -> frequency, for violin plots
};

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

// Helpers shared with the CLI.
struct LoadedDataset {
    DatasetSpec spec;
    // Multidimensional case:
    std::optional<Dataset> data;
    std::optional<Dag> truth_dag;
    std::optional<MixedGraph> truth_graph;  // from truth_path
    // Pairwise case:
    std::vector<LoadedPair> pairs;

    bool is_pairwise() const { return !pairs.empty(); }
};

LoadedDataset load_dataset(const DatasetSpec& spec, const RngSeed& seed);

// Runs one graph algorithm and scores it against the truth; returns the
// metric map (shd, f1, precision, recall).
std::map<std::string, double> evaluate_graph_algorithm(const AlgorithmSpec& algo,
                                                       const Dataset& data,
                                                       const MixedGraph& truth_pattern,
                                                       const std::string& shd_target);

// Truth pattern for comparisons: the DAG's CPDAG under "cpdag", the DAG
// itself as a directed graph under "dag".
MixedGraph truth_pattern_for(const Dag& truth, const std::string& shd_target);

}  // namespace privcd
