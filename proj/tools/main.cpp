#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "privcd/audit.hpp"
#include "privcd/csv.hpp"
#include "privcd/discretize.hpp"
#include "privcd/experiment.hpp"
#include "privcd/hill_climb.hpp"
#include "privcd/meek.hpp"
#include "privcd/metrics.hpp"
#include "privcd/pairs_io.hpp"
#include "privcd/pairwise.hpp"
#include "privcd/pc.hpp"
#include "privcd/report.hpp"
#include "privcd/sem.hpp"
#include "privcd/toml_lite.hpp"

#include "json.hpp"

namespace {

using namespace privcd;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitAllCellsFailed = 3;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::int64_t> parse_dims(const std::string& text) {
    std::vector<std::int64_t> dims;
    std::string current;
    for (char c : text + ",") {
        if (c == ',') {
            if (!current.empty()) dims.push_back(std::stoll(current));
            current.clear();
        } else {
            current += c;
        }
    }
    return dims;
}

MechanismSpec spec_from_flags(const std::string& kind, std::optional<double> level,
                              std::optional<double> epsilon, const std::string& norm,
                              const std::string& mode, const std::string& split) {
    MechanismSpec spec;
    spec.kind = mechanism_kind_from_string(kind);
    spec.level = level;
    spec.epsilon = epsilon;
    bool is_geo = spec.kind == MechanismKind::geo_cwise || spec.kind == MechanismKind::geo_comb;
    if (is_geo) {
        if (!norm.empty()) spec.norm = norm_from_string(norm);
        if (!mode.empty()) spec.mode = mode_from_string(mode);
    }
    if (!split.empty()) spec.cwise_split = cwise_split_from_string(split);
    return spec;
}

int cmd_discretize(const std::string& input, const std::string& output, bool has_header,
                   const std::string& bins_flag) {
    auto table = ingest_csv(input, has_header);
    std::vector<std::int64_t> bins;
    if (bins_flag == "auto") {
        for (auto u : distinct_counts(table)) bins.push_back(choose_bin_count(u));
    } else {
        bins = parse_dims(bins_flag);
        if (bins.size() == 1) bins.assign(table.arity(), bins[0]);
    }
    auto ds = discretize(table, bins);
    write_dataset(ds, output);
    std::cout << "wrote " << output << " (n=" << ds.n() << ", dims=";
    for (std::size_t i = 0; i < ds.domain.dims.size(); ++i) {
        std::cout << (i ? "," : "") << ds.domain.dims[i];
    }
    std::cout << ")\n";
    return kExitOk;
}

int cmd_privatize(const std::string& input, const std::string& output,
                  const MechanismSpec& spec, std::uint64_t seed) {
    auto ds = read_dataset(input);
    auto out = privatize_dataset(ds, spec, RngSeed{seed, {}});
    write_dataset(out, output);
    std::cout << "wrote " << output << " (mechanism=" << spec.id() << ")\n";
    return kExitOk;
}

int cmd_tune(const std::string& dims_flag, const std::vector<double>& levels,
             const std::vector<std::string>& kinds, const std::string& split,
             const std::string& norm) {
    Domain domain(parse_dims(dims_flag));
    std::cout << "kind,level,parameterization\n";
    for (double level : levels) {
        for (const auto& kind_name : kinds) {
            MechanismKind kind = mechanism_kind_from_string(kind_name);
            std::string text;
            try {
                MechanismSpec spec;
                spec.kind = kind;
                spec.level = level;
                if (!split.empty()) spec.cwise_split = cwise_split_from_string(split);
                if (kind == MechanismKind::geo_cwise || kind == MechanismKind::geo_comb) {
                    if (!norm.empty()) spec.norm = norm_from_string(norm);
                }
                switch (kind) {
                    case MechanismKind::krr_comb: {
                        auto k = domain.combined_size();
                        text = "epsilon=" + format_double(epsilon_for_krr(level, *k));
                        break;
                    }
                    case MechanismKind::krr_cwise: {
                        auto resolved = resolve_krr_cwise(domain, spec);
                        text = "epsilons=";
                        for (std::size_t i = 0; i < resolved.epsilons.size(); ++i) {
                            text += (i ? "|" : "") + format_double(resolved.epsilons[i]);
                        }
                        break;
                    }
                    case MechanismKind::geo_comb:
                        text = "p_max=" + format_double(level);
                        break;
                    case MechanismKind::geo_cwise: {
                        auto resolved = resolve_geo_cwise(domain, spec);
                        text = "p_max=";
                        for (std::size_t i = 0; i < resolved.p_maxes.size(); ++i) {
                            text += (i ? "|" : "") + format_double(resolved.p_maxes[i]);
                        }
                        break;
                    }
                }
            } catch (const std::exception& e) {
                text = std::string("infeasible: ") + e.what();
            }
            std::cout << kind_name << ',' << format_double(level) << ',' << text << '\n';
        }
    }
    return kExitOk;
}

int cmd_discover(const std::string& input, const std::string& output, const std::string& algo,
                 const std::string& test, double alpha, double penalty_discount) {
    auto ds = read_dataset(input);
    nlohmann::json result;
    std::string graph_json;
    if (algo == "pc") {
        auto g = pc(ds, CiTestConfig{ci_test_from_string(test), alpha});
        graph_json = g.to_json();
    } else if (algo == "bic") {
        auto dag = bic_hill_climb(ds, penalty_discount);
        graph_json = dag.as_mixed().to_json();
    } else {
        if (ds.arity() != 2) {
            throw std::runtime_error("pairwise algorithms need a 2-column dataset");
        }
        std::vector<double> x(ds.n()), y(ds.n());
        for (std::size_t r = 0; r < ds.n(); ++r) {
            x[r] = static_cast<double>(ds.rows[r][0]);
            y[r] = static_cast<double>(ds.rows[r][1]);
        }
        DirectionDecision decision;
        if (algo == "reci") {
            decision = reci(x, y);
        } else if (algo == "igci") {
            decision = igci(x, y);
        } else if (algo == "cds") {
            decision = cds(x, y);
        } else if (algo == "anm") {
            decision = anm(x, y);
        } else {
            throw std::runtime_error("unknown algorithm: " + algo);
        }
        nlohmann::json j;
        j["direction"] = to_string(decision.direction);
        j["score"] = decision.score;
        j["forced"] = decision.forced;
        graph_json = j.dump(2);
    }
    if (output.empty()) {
        std::cout << graph_json << '\n';
    } else {
        std::ofstream out(output);
        out << graph_json << '\n';
        std::cout << "wrote " << output << '\n';
    }
    return kExitOk;
}

MixedGraph read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open graph: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return MixedGraph::from_json(buffer.str());
}

int cmd_evaluate(const std::string& truth_path, const std::string& estimate_path,
                 const std::string& shd_target) {
    MixedGraph truth = read_graph(truth_path);
    MixedGraph estimate = read_graph(estimate_path);
    if (shd_target == "cpdag") {
        // Fully directed inputs are treated as DAGs and patterned first.
        auto patternize = [](const MixedGraph& g) -> MixedGraph {
            if (!g.undirected_edges().empty() || g.directed_edges().empty()) return g;
            std::vector<std::pair<int, int>> edges(g.directed_edges().begin(),
                                                   g.directed_edges().end());
            Dag dag(static_cast<int>(g.node_count()), edges);
            MixedGraph pattern = cpdag_of(dag);
            MixedGraph out(g.names());
            for (const auto& [from, to] : pattern.directed_edges()) out.add_directed(from, to);
            for (const auto& [a, b] : pattern.undirected_edges()) out.add_undirected(a, b);
            return out;
        };
        truth = patternize(truth);
        estimate = patternize(estimate);
    }
    auto f1 = skeleton_f1(truth, estimate);
    nlohmann::json j;
    j["shd"] = shd(truth, estimate);
    j["f1"] = f1.f1;
    j["precision"] = f1.precision;
    j["recall"] = f1.recall;
    std::cout << j.dump(2) << '\n';
    return kExitOk;
}

void dump_channel_csv(const ChannelView& view, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    for (std::uint64_t x = 0; x < view.size; ++x) {
        for (std::uint64_t y = 0; y < view.size; ++y) {
            out << (y ? "," : "") << format_double(view.prob(x, y));
        }
        out << '\n';
    }
}

int cmd_audit(const std::string& dims_flag, const MechanismSpec& spec,
              const std::string& dump_path) {
    Domain domain(parse_dims(dims_flag));
    nlohmann::json j;
    if (spec.kind == MechanismKind::krr_comb || spec.kind == MechanismKind::geo_comb) {
        ChannelView view;
        AuditReport report;
        if (spec.kind == MechanismKind::krr_comb) {
            auto k = domain.combined_size();
            if (!k) throw std::runtime_error("combined domain too large");
            double eps = spec.epsilon ? *spec.epsilon : epsilon_for_krr(*spec.level, *k);
            auto params = KrrParams::from_epsilon(*k, eps);
            report = audit_effective_eps(params);
            view = channel_of(params);
        } else {
            BoundedGeometric geo =
                spec.epsilon
                    ? BoundedGeometric::with_fixed_rate(domain, *spec.epsilon,
                                                        spec.norm.value_or(NormKind::euclidean))
                    : BoundedGeometric(domain, *spec.level,
                                       spec.norm.value_or(NormKind::euclidean));
            report = audit_effective_eps(geo);
            view = channel_of(geo);
        }
        j["ldp_eps"] = report.ldp_eps;
        j["dpriv_eps"] = report.dpriv_eps;
        j["bayes_attacker_success"] = bayes_attacker_success(view);
        if (!dump_path.empty()) {
            dump_channel_csv(view, dump_path);
            j["channel_csv"] = dump_path;
        }
    } else {
        // C-wise kinds: audit each attribute channel.
        j["per_attribute"] = nlohmann::json::array();
        if (spec.kind == MechanismKind::krr_cwise) {
            auto resolved = resolve_krr_cwise(domain, spec);
            for (std::size_t i = 0; i < domain.arity(); ++i) {
                auto params = KrrParams::from_epsilon(
                    static_cast<std::uint64_t>(domain.dims[i]), resolved.epsilons[i]);
                auto report = audit_effective_eps(params);
                j["per_attribute"].push_back({{"attribute", domain.names[i]},
                                              {"epsilon", resolved.epsilons[i]},
                                              {"ldp_eps", report.ldp_eps},
                                              {"dpriv_eps", report.dpriv_eps}});
            }
        } else {
            auto resolved = resolve_geo_cwise(domain, spec);
            for (std::size_t i = 0; i < domain.arity(); ++i) {
                BoundedGeometric geo(Domain({domain.dims[i]}, {domain.names[i]}),
                                     resolved.p_maxes[i], NormKind::manhattan,
                                     spec.mode.value_or(BoundingMode::resample));
                auto report = audit_effective_eps(geo);
                j["per_attribute"].push_back({{"attribute", domain.names[i]},
                                              {"p_max", resolved.p_maxes[i]},
                                              {"ldp_eps", report.ldp_eps},
                                              {"dpriv_eps", report.dpriv_eps}});
            }
        }
    }
    std::cout << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_experiment(const std::string& config_path, const std::string& out_override,
                   std::optional<std::uint64_t> seed_override, bool force) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    if (!out_override.empty()) cfg.output_dir = out_override;
    if (seed_override) cfg.seed = *seed_override;
    auto records = run_experiment(cfg);
    bool any_ok = false;
    for (const auto& record : records) {
        if (!record.skipped()) any_ok = true;
    }
    emit_reports(records, cfg.output_dir, force, cfg.emit_svg);
    std::size_t skipped = 0;
    for (const auto& record : records) skipped += record.skipped();
    std::cout << records.size() << " run records (" << skipped << " skipped) -> "
              << cfg.output_dir << "/runs.csv\n";
    return any_ok ? kExitOk : kExitAllCellsFailed;
}

int cmd_synth(const std::string& name, std::uint64_t seed, const std::string& output,
              const std::string& truth_output) {
    auto benchmark = make_benchmark(name, RngSeed{seed, {}});
    write_dataset(benchmark.data, output);
    if (!truth_output.empty()) {
        std::ofstream out(truth_output);
        out << benchmark.truth.as_mixed().to_json() << '\n';
    }
    std::cout << "wrote " << output << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Locally private mechanisms and a causal-discovery benchmark pipeline"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "Master RNG seed")->capture_default_str();

    // discretize
    auto* discretize_cmd = app.add_subcommand("discretize", "Uniform-bin a numeric CSV");
    std::string in_path, out_path, bins_flag = "auto";
    bool no_header = false;
    discretize_cmd->add_option("--input", in_path)->required();
    discretize_cmd->add_option("--out", out_path)->required();
    discretize_cmd->add_option("--bins", bins_flag,
                               "'auto', a single count, or one count per column");
    discretize_cmd->add_flag("--no-header", no_header);

    // privatize
    auto* privatize_cmd = app.add_subcommand("privatize", "Apply a mechanism to a dataset");
    std::string mech_kind = "geo_cwise", mech_norm, mech_mode, mech_split;
    std::string priv_in, priv_out;
    double level_flag = -1.0, epsilon_flag = -1.0;
    privatize_cmd->add_option("--input", priv_in)->required();
    privatize_cmd->add_option("--out", priv_out)->required();
    privatize_cmd->add_option("--mechanism", mech_kind,
                              "krr_cwise|krr_comb|geo_cwise|geo_comb");
    privatize_cmd->add_option("--level", level_flag, "attacker-success target in (0,1]");
    privatize_cmd->add_option("--epsilon", epsilon_flag, "direct privacy budget/rate");
    privatize_cmd->add_option("--norm", mech_norm, "manhattan|euclidean|chebyshev");
    privatize_cmd->add_option("--mode", mech_mode, "resample|clip|uniform_replace");
    privatize_cmd->add_option("--split", mech_split, "per_attribute|joint");

    // tune
    auto* tune_cmd = app.add_subcommand("tune", "Matched parameters per privacy level");
    std::string dims_flag;
    std::vector<double> levels_flag = {0.05, 0.1, 0.5};
    std::vector<std::string> kinds_flag = {"krr_cwise", "krr_comb", "geo_cwise", "geo_comb"};
    std::string tune_split, tune_norm;
    tune_cmd->add_option("--dims", dims_flag, "comma-separated cardinalities")->required();
    tune_cmd->add_option("--levels", levels_flag)->delimiter(',');
    tune_cmd->add_option("--kinds", kinds_flag)->delimiter(',');
    tune_cmd->add_option("--split", tune_split);
    tune_cmd->add_option("--norm", tune_norm);

    // discover
    auto* discover_cmd = app.add_subcommand("discover", "Run a structure-learning algorithm");
    std::string disc_in, disc_out, algo = "pc", test = "fisherz";
    double alpha = 0.05, penalty_discount = 1.0;
    discover_cmd->add_option("--input", disc_in)->required();
    discover_cmd->add_option("--out", disc_out);
    discover_cmd->add_option("--algo", algo, "pc|bic|reci|igci|cds|anm");
    discover_cmd->add_option("--test", test, "chi2|fisherz");
    discover_cmd->add_option("--alpha", alpha);
    discover_cmd->add_option("--penalty-discount", penalty_discount);

    // evaluate
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score an estimate against the truth");
    std::string truth_path, estimate_path, shd_target = "cpdag";
    evaluate_cmd->add_option("--truth", truth_path)->required();
    evaluate_cmd->add_option("--estimate", estimate_path)->required();
    evaluate_cmd->add_option("--shd-target", shd_target, "dag|cpdag");

    // audit
    auto* audit_cmd = app.add_subcommand("audit", "Measure effective privacy of a mechanism");
    std::string audit_dims, audit_kind = "geo_comb", audit_norm, audit_mode, audit_split;
    std::string dump_channel;
    double audit_level = -1.0, audit_epsilon = -1.0;
    audit_cmd->add_option("--dims", audit_dims)->required();
    audit_cmd->add_option("--mechanism", audit_kind);
    audit_cmd->add_option("--level", audit_level);
    audit_cmd->add_option("--epsilon", audit_epsilon);
    audit_cmd->add_option("--norm", audit_norm);
    audit_cmd->add_option("--mode", audit_mode);
    audit_cmd->add_option("--split", audit_split);
    audit_cmd->add_option("--dump-channel", dump_channel, "write the channel matrix CSV");

    // experiment
    auto* experiment_cmd = app.add_subcommand("experiment", "Run a full benchmark config");
    std::string config_path, exp_out;
    bool force = false;
    bool seed_given = false;
    experiment_cmd->add_option("--config", config_path)->required();
    experiment_cmd->add_option("--out", exp_out, "override output_dir");
    experiment_cmd->add_flag("--force", force, "overwrite an existing output dir");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic benchmark dataset");
    std::string synth_name = "synth10", synth_out, synth_truth;
    synth_cmd->add_option("--name", synth_name, "synth5|synth10");
    synth_cmd->add_option("--out", synth_out)->required();
    synth_cmd->add_option("--truth", synth_truth, "also write the ground-truth graph JSON");

    // convert-pairmeta
    auto* convert_cmd =
        app.add_subcommand("convert-pairmeta", "Convert upstream pair metadata");
    std::string upstream_meta, converted_meta;
    convert_cmd->add_option("--input", upstream_meta)->required();
    convert_cmd->add_option("--out", converted_meta)->required();

    CLI11_PARSE(app, argc, argv);
    seed_given = app.count("--seed") > 0;

    try {
        if (discretize_cmd->parsed()) {
            return cmd_discretize(in_path, out_path, !no_header, bins_flag);
        }
        if (privatize_cmd->parsed()) {
            auto spec = spec_from_flags(
                mech_kind, level_flag > 0 ? std::optional(level_flag) : std::nullopt,
                epsilon_flag >= 0 ? std::optional(epsilon_flag) : std::nullopt, mech_norm,
                mech_mode, mech_split);
            return cmd_privatize(priv_in, priv_out, spec, seed);
        }
        if (tune_cmd->parsed()) {
            return cmd_tune(dims_flag, levels_flag, kinds_flag, tune_split, tune_norm);
        }
        if (discover_cmd->parsed()) {
            return cmd_discover(disc_in, disc_out, algo, test, alpha, penalty_discount);
        }
        if (evaluate_cmd->parsed()) {
            return cmd_evaluate(truth_path, estimate_path, shd_target);
        }
        if (audit_cmd->parsed()) {
            auto spec = spec_from_flags(
                audit_kind, audit_level > 0 ? std::optional(audit_level) : std::nullopt,
                audit_epsilon >= 0 ? std::optional(audit_epsilon) : std::nullopt, audit_norm,
                audit_mode, audit_split);
            return cmd_audit(audit_dims, spec, dump_channel);
        }
        if (experiment_cmd->parsed()) {
            return cmd_experiment(config_path, exp_out,
                                  seed_given ? std::optional(seed) : std::nullopt, force);
        }
        if (synth_cmd->parsed()) {
            return cmd_synth(synth_name, seed, synth_out, synth_truth);
        }
        if (convert_cmd->parsed()) {
            std::string report = convert_upstream_pairmeta(upstream_meta, converted_meta);
            if (!report.empty()) std::cerr << report;
            std::cout << "wrote " << converted_meta << '\n';
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
    return kExitConfigError;
}
