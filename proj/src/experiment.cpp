#include "privcd/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "privcd/csv.hpp"
#include "privcd/discretize.hpp"
#include "privcd/hill_climb.hpp"
#include "privcd/meek.hpp"
#include "privcd/metrics.hpp"
#include "privcd/pairwise.hpp"
#include "privcd/pc.hpp"
#include "privcd/sem.hpp"
#include "privcd/toml_lite.hpp"

namespace privcd {

namespace {

std::string format_alpha(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

MechanismSpec with_level(const MechanismSpec& base, double level) {
    MechanismSpec spec = base;
    spec.epsilon.reset();
    spec.level = level;
    return spec;
}

Dataset discretize_pair(const LoadedPair& pair) {
    ContinuousTable table;
    table.names = {"x", "y"};
    table.columns = {pair.x, pair.y};
    auto distinct = distinct_counts(table);
    std::vector<std::int64_t> bins = {choose_bin_count(distinct[0]),
                                      choose_bin_count(distinct[1])};
    return discretize(table, bins);
}

// Forced decision of one pairwise algorithm on category indices treated as
// numeric values.
DirectionDecision run_decider(const AlgorithmSpec& algo, const std::vector<double>& x,
                              const std::vector<double>& y) {
    if (algo.algo == "reci") return reci(x, y);
    if (algo.algo == "igci") return igci(x, y);
    if (algo.algo == "cds") return cds(x, y);
    if (algo.algo == "anm") return anm(x, y);
    throw std::invalid_argument("unknown pairwise algorithm: " + algo.algo);
}

std::map<std::string, double> evaluate_pairwise_algorithm(
    const AlgorithmSpec& algo, const std::vector<LoadedPair>& pairs,
    const std::vector<Dataset>& privatized) {
    std::vector<PairOutcome> outcomes;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const Dataset& ds = privatized[p];
        std::vector<double> x(ds.n()), y(ds.n());
        for (std::size_t r = 0; r < ds.n(); ++r) {
            x[r] = static_cast<double>(ds.rows[r][0]);
            y[r] = static_cast<double>(ds.rows[r][1]);
        }
        PairOutcome outcome;
        outcome.pair_id = pairs[p].id;
        outcome.weight = pairs[p].weight;
        try {
            auto decision = run_decider(algo, x, y);
            outcome.correct = decision.direction == pairs[p].truth_direction;
        } catch (const std::exception&) {
            // Degenerate privatized pair (for example a constant column):
            // a forced decision cannot abstain, so count it as wrong.
            outcome.correct = false;
        }
        outcomes.push_back(outcome);
    }
    double accuracy = weighted_accuracy(outcomes);
    // Clopper-Pearson on the unweighted correct count.
    std::int64_t correct = 0;
    for (const auto& outcome : outcomes) correct += outcome.correct;
    auto [lo, hi] = clopper_pearson(correct, static_cast<std::int64_t>(outcomes.size()), 0.95);
    return {{"weighted_accuracy", accuracy}, {"ci_lo", lo}, {"ci_hi", hi}};
}

}  // namespace

std::string AlgorithmSpec::id() const {
    if (algo == "pc") {
        return "pc_" + std::string(test == CiTestKind::chi_square ? "chi2" : "fisherz") + "_a" +
               format_alpha(alpha);
    }
    if (algo == "bic") {
        return "bic_pd" + format_alpha(penalty_discount);
    }
    return algo;
}

bool AlgorithmSpec::pairwise() const {
    return algo == "reci" || algo == "igci" || algo == "cds" || algo == "anm";
}

ExperimentConfig load_experiment_config(const std::string& path) {
    TomlDocument doc = parse_toml_file(path);
    const TomlTable& root = doc.root;
    ExperimentConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(root.get_int_or("seed", 0));
    cfg.runs = static_cast<int>(root.get_int_or("runs", 5));
    if (cfg.runs < 1) {
        throw std::runtime_error("config: runs must be >= 1");
    }
    if (root.has("levels")) cfg.levels = root.get_double_array("levels");
    for (double level : cfg.levels) {
        if (level <= 0.0 || level > 1.0) {
            throw std::runtime_error("config: levels must be in (0,1]");
        }
    }
    cfg.output_dir = root.get_string_or("output_dir", "out");
    cfg.shd_target = root.get_string_or("shd_target", "cpdag");
    if (cfg.shd_target != "cpdag" && cfg.shd_target != "dag") {
        throw std::runtime_error("config: shd_target must be cpdag or dag");
    }
    cfg.emit_svg = root.get_bool_or("svg", true);

    auto datasets = doc.table_lists.find("dataset");
    if (datasets == doc.table_lists.end() || datasets->second.empty()) {
        throw std::runtime_error("config: at least one [[dataset]] required");
    }
    for (const auto& table : datasets->second) {
        DatasetSpec spec;
        spec.id = table.get_string("id");
        spec.path = table.get_string_or("path", "");
        spec.synth = table.get_string_or("synth", "");
        spec.pairs_dir = table.get_string_or("pairs", "");
        spec.truth_path = table.get_string_or("truth", "");
        int sources = !spec.path.empty() + !spec.synth.empty() + !spec.pairs_dir.empty();
        if (sources != 1) {
            throw std::runtime_error("config: dataset " + spec.id +
                                     " needs exactly one of path/synth/pairs");
        }
        cfg.datasets.push_back(std::move(spec));
    }

    auto mechanisms = doc.table_lists.find("mechanism");
    if (mechanisms == doc.table_lists.end() || mechanisms->second.empty()) {
        throw std::runtime_error("config: at least one [[mechanism]] required");
    }
    for (const auto& table : mechanisms->second) {
        MechanismSpec spec;
        spec.kind = mechanism_kind_from_string(table.get_string("kind"));
        if (table.has("norm")) spec.norm = norm_from_string(table.get_string("norm"));
        if (table.has("mode")) spec.mode = mode_from_string(table.get_string("mode"));
        if (table.has("split")) {
            spec.cwise_split = cwise_split_from_string(table.get_string("split"));
        }
        cfg.mechanisms.push_back(spec);
    }

    auto algorithms = doc.table_lists.find("algorithm");
    if (algorithms == doc.table_lists.end() || algorithms->second.empty()) {
        throw std::runtime_error("config: at least one [[algorithm]] required");
    }
    for (const auto& table : algorithms->second) {
        AlgorithmSpec spec;
        spec.algo = table.get_string("algo");
        if (table.has("test")) spec.test = ci_test_from_string(table.get_string("test"));
        spec.alpha = table.get_double_or("alpha", 0.05);
        spec.penalty_discount = table.get_double_or("penalty_discount", 1.0);
        cfg.algorithms.push_back(std::move(spec));
    }
    return cfg;
}

LoadedDataset load_dataset(const DatasetSpec& spec, const RngSeed& seed) {
    LoadedDataset loaded;
    loaded.spec = spec;
    if (!spec.synth.empty()) {
        auto benchmark = make_benchmark(spec.synth, seed);
        loaded.data = std::move(benchmark.data);
        loaded.truth_dag = std::move(benchmark.truth);
        return loaded;
    }
    if (!spec.pairs_dir.empty()) {
        loaded.pairs = ingest_pairs_dir(spec.pairs_dir);
        return loaded;
    }
    loaded.data = read_dataset(spec.path);
    if (!spec.truth_path.empty()) {
        std::ifstream in(spec.truth_path);
        if (!in) {
            throw std::runtime_error("cannot open truth graph: " + spec.truth_path);
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        loaded.truth_graph = MixedGraph::from_json(buffer.str());
    }
    return loaded;
}

MixedGraph truth_pattern_for(const Dag& truth, const std::string& shd_target) {
    return shd_target == "cpdag" ? cpdag_of(truth) : truth.as_mixed();
}

std::map<std::string, double> evaluate_graph_algorithm(const AlgorithmSpec& algo,
                                                       const Dataset& data,
                                                       const MixedGraph& truth_pattern,
                                                       const std::string& shd_target) {
    MixedGraph estimate;
    if (algo.algo == "pc") {
        estimate = pc(data, CiTestConfig{algo.test, algo.alpha});
    } else if (algo.algo == "bic") {
        Dag found = bic_hill_climb(data, algo.penalty_discount);
        estimate = shd_target == "cpdag" ? cpdag_of(found) : found.as_mixed();
    } else {
        throw std::invalid_argument("unknown graph algorithm: " + algo.algo);
    }
    auto f1 = skeleton_f1(truth_pattern, estimate);
    return {{"shd", static_cast<double>(shd(truth_pattern, estimate))},
            {"f1", f1.f1},
            {"precision", f1.precision},
            {"recall", f1.recall}};
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
    std::vector<RunRecord> records;

    // Dataset streams are derived from (seed, 1000 + dataset index) so that
    // synthetic data is independent of the mechanism grid.
    std::vector<LoadedDataset> loaded;
    for (std::size_t d = 0; d < cfg.datasets.size(); ++d) {
        loaded.push_back(load_dataset(cfg.datasets[d],
                                      derive_stream(RngSeed{cfg.seed, {}}, 1000 + d)));
    }

    // Baseline cells: algorithms on the clean data, once per dataset.
    for (std::size_t d = 0; d < loaded.size(); ++d) {
        const auto& dataset = loaded[d];
        for (const auto& algo : cfg.algorithms) {
            if (algo.pairwise() != dataset.is_pairwise()) continue;
            RunRecord record;
            record.dataset_id = dataset.spec.id;
            record.mechanism_id = "no_noise";
            record.algorithm_id = algo.id();
            record.repetition = 0;
            record.seed_path = "baseline";
            auto start = std::chrono::steady_clock::now();
            try {
                if (dataset.is_pairwise()) {
                    std::vector<Dataset> clean;
                    for (const auto& pair : dataset.pairs) {
                        clean.push_back(discretize_pair(pair));
                    }
                    record.metrics = evaluate_pairwise_algorithm(algo, dataset.pairs, clean);
                } else {
                    MixedGraph truth = dataset.truth_dag
                                           ? truth_pattern_for(*dataset.truth_dag, cfg.shd_target)
                                           : dataset.truth_graph.value();
                    record.metrics = evaluate_graph_algorithm(algo, *dataset.data, truth,
                                                              cfg.shd_target);
                }
            } catch (const std::exception& e) {
                record.skip_reason = e.what();
            }
            record.wall_time_s = elapsed_seconds(start);
            records.push_back(std::move(record));
        }
    }

    // Grid cells. The cell index runs over dataset-major, then mechanism,
    // then level; each repetition derives its own stream from it.
    std::uint64_t cell_index = 0;
    for (std::size_t d = 0; d < loaded.size(); ++d) {
        const auto& dataset = loaded[d];
        for (const auto& mechanism : cfg.mechanisms) {
            for (double level : cfg.levels) {
                const MechanismSpec cell_spec = with_level(mechanism, level);
                for (int rep = 0; rep < cfg.runs; ++rep) {
                    RngSeed cell_seed =
                        derive_stream(derive_stream(RngSeed{cfg.seed, {}}, cell_index),
                                      static_cast<std::uint64_t>(rep));
                    std::string seed_path = "cell=" + std::to_string(cell_index) +
                                            "/rep=" + std::to_string(rep);

                    std::string privatize_error;
                    std::vector<Dataset> privatized_pairs;
                    std::optional<Dataset> privatized;
                    auto privatize_start = std::chrono::steady_clock::now();
                    try {
                        if (dataset.is_pairwise()) {
                            for (std::size_t p = 0; p < dataset.pairs.size(); ++p) {
                                Dataset clean = discretize_pair(dataset.pairs[p]);
                                privatized_pairs.push_back(privatize_dataset(
                                    clean, cell_spec,
                                    derive_stream(cell_seed, static_cast<std::uint64_t>(p))));
                            }
                        } else {
                            privatized = privatize_dataset(*dataset.data, cell_spec, cell_seed);
                        }
                    } catch (const std::exception& e) {
                        privatize_error = e.what();
                    }
                    double privatize_time = elapsed_seconds(privatize_start);

                    for (const auto& algo : cfg.algorithms) {
                        if (algo.pairwise() != dataset.is_pairwise()) continue;
                        RunRecord record;
                        record.dataset_id = dataset.spec.id;
                        record.mechanism_id = cell_spec.id();
                        record.level = level;
                        record.algorithm_id = algo.id();
                        record.repetition = rep;
                        record.seed_path = seed_path;
                        auto start = std::chrono::steady_clock::now();
                        if (!privatize_error.empty()) {
                            record.skip_reason = privatize_error;
                        } else {
                            try {
                                if (dataset.is_pairwise()) {
                                    record.metrics = evaluate_pairwise_algorithm(
                                        algo, dataset.pairs, privatized_pairs);
                                } else {
                                    MixedGraph truth =
                                        dataset.truth_dag
                                            ? truth_pattern_for(*dataset.truth_dag,
                                                                cfg.shd_target)
                                            : dataset.truth_graph.value();
                                    record.metrics = evaluate_graph_algorithm(
                                        algo, *privatized, truth, cfg.shd_target);
                                }
                            } catch (const std::exception& e) {
                                record.skip_reason = e.what();
                            }
                        }
                        record.wall_time_s = privatize_time + elapsed_seconds(start);
                        records.push_back(std::move(record));
                    }
                }
                ++cell_index;
            }
        }
    }
    return records;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
    if (records.empty()) {
        throw std::invalid_argument("summarize: no records");
    }
    std::map<std::tuple<std::string, std::string, std::string, std::string, std::string>,
             SummaryRow>
        groups;
    for (const auto& record : records) {
        if (record.skipped()) continue;
        std::string level_key =
            record.level ? std::to_string(*record.level) : std::string("");
        for (const auto& [metric, value] : record.metrics) {
            auto key = std::make_tuple(record.dataset_id, record.mechanism_id, level_key,
                                       record.algorithm_id, metric);
            auto it = groups.find(key);
            if (it == groups.end()) {
                SummaryRow row;
                row.dataset_id = record.dataset_id;
                row.mechanism_id = record.mechanism_id;
                row.level = record.level;
                row.algorithm_id = record.algorithm_id;
                row.metric = metric;
                row.min = value;
                row.max = value;
                it = groups.emplace(key, std::move(row)).first;
            }
            SummaryRow& row = it->second;
            row.mean += value;
            row.min = std::min(row.min, value);
            row.max = std::max(row.max, value);
            row.histogram[value] += 1;
            row.count += 1;
        }
    }
    std::vector<SummaryRow> rows;
    rows.reserve(groups.size());
    for (auto& [key, row] : groups) {
        row.mean /= static_cast<double>(row.count);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace privcd
