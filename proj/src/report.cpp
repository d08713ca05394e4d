#include "privcd/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace privcd {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kMetricColumns = {
    "shd", "f1", "precision", "recall", "weighted_accuracy", "ci_lo", "ci_hi"};

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string level_text(const std::optional<double>& level) {
    return level ? format_double(*level) : std::string("");
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path.string());
    }
    return out;
}

void write_runs_csv(const std::vector<RunRecord>& records, const fs::path& path) {
    auto out = open_out(path);
    out << "dataset,mechanism,level,algorithm,repetition,seed_path,status";
    for (const auto& metric : kMetricColumns) out << ',' << metric;
    out << '\n';
    for (const auto& record : records) {
        out << record.dataset_id << ',' << record.mechanism_id << ','
            << level_text(record.level) << ',' << record.algorithm_id << ','
            << record.repetition << ',' << record.seed_path << ','
            << (record.skipped() ? "skipped: " + record.skip_reason : std::string("ok"));
        for (const auto& metric : kMetricColumns) {
            auto it = record.metrics.find(metric);
            out << ',';
            if (it != record.metrics.end()) out << format_double(it->second);
        }
        out << '\n';
    }
}

void write_timings_csv(const std::vector<RunRecord>& records, const fs::path& path) {
    auto out = open_out(path);
    out << "dataset,mechanism,level,algorithm,repetition,wall_time_s\n";
    for (const auto& record : records) {
        out << record.dataset_id << ',' << record.mechanism_id << ','
            << level_text(record.level) << ',' << record.algorithm_id << ','
            << record.repetition << ',' << format_double(record.wall_time_s) << '\n';
    }
}

void write_summary_csv(const std::vector<SummaryRow>& rows, const fs::path& path) {
    auto out = open_out(path);
    out << "dataset,mechanism,level,algorithm,metric,count,mean,min,max,histogram\n";
    for (const auto& row : rows) {
        out << row.dataset_id << ',' << row.mechanism_id << ',' << level_text(row.level) << ','
            << row.algorithm_id << ',' << row.metric << ',' << row.count << ','
            << format_double(row.mean) << ',' << format_double(row.min) << ','
            << format_double(row.max) << ',';
        bool first = true;
        for (const auto& [value, freq] : row.histogram) {
            if (!first) out << ';';
            out << format_double(value) << ':' << freq;
            first = false;
        }
        out << '\n';
    }
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) {
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') ? c : '_';
    }
    return out;
}

void write_plot_data(const std::vector<RunRecord>& records, const fs::path& dir) {
    // Long-format distribution data per (dataset, metric): one row per run.
    std::set<std::pair<std::string, std::string>> keys;
    for (const auto& record : records) {
        if (record.skipped()) continue;
        for (const auto& [metric, value] : record.metrics) {
            keys.emplace(record.dataset_id, metric);
        }
    }
    for (const auto& [dataset, metric] : keys) {
        auto out = open_out(dir / ("plot_" + sanitize(dataset) + "_" + sanitize(metric) +
                                   ".csv"));
        out << "mechanism,level,algorithm,repetition,value\n";
        for (const auto& record : records) {
            if (record.skipped() || record.dataset_id != dataset) continue;
            auto it = record.metrics.find(metric);
            if (it == record.metrics.end()) continue;
            out << record.mechanism_id << ',' << level_text(record.level) << ','
                << record.algorithm_id << ',' << record.repetition << ','
                << format_double(it->second) << '\n';
        }
    }
}

struct BoxStats {
    double lo, q1, median, q3, hi;
};

BoxStats box_stats(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    auto quantile = [&](double q) {
        double pos = q * (values.size() - 1);
        std::size_t lo = static_cast<std::size_t>(pos);
        std::size_t hi = std::min(lo + 1, values.size() - 1);
        double frac = pos - lo;
        return values[lo] * (1 - frac) + values[hi] * frac;
    };
    return {values.front(), quantile(0.25), quantile(0.5), quantile(0.75), values.back()};
}

}  // namespace

std::string render_box_chart_svg(const std::vector<RunRecord>& records,
                                 const std::string& dataset_id, const std::string& metric) {
    // Group runs by (mechanism, level, algorithm).
    std::map<std::string, std::vector<double>> groups;
    for (const auto& record : records) {
        if (record.skipped() || record.dataset_id != dataset_id) continue;
        auto it = record.metrics.find(metric);
        if (it == record.metrics.end()) continue;
        std::string label = record.mechanism_id;
        if (record.level) label += "@" + level_text(*record.level);
        label += "/" + record.algorithm_id;
        groups[label].push_back(it->second);
    }
    if (groups.empty()) return "";

    double vmin = 1e300, vmax = -1e300;
    for (const auto& [label, values] : groups) {
        for (double v : values) {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    }
    if (vmax <= vmin) {
        vmax = vmin + 1.0;
        vmin -= 1.0;
    }
    const double margin = 0.05 * (vmax - vmin);
    vmin -= margin;
    vmax += margin;

    const int box_width = 46;
    const int gap = 18;
    const int plot_height = 300;
    const int label_height = 150;
    const int left = 60;
    const int width = left + static_cast<int>(groups.size()) * (box_width + gap) + 20;
    const int height = plot_height + label_height + 40;
    auto y_of = [&](double v) {
        return 20.0 + (vmax - v) / (vmax - vmin) * plot_height;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    svg << "<text x=\"8\" y=\"14\" font-size=\"12\">" << dataset_id << " / " << metric
        << "</text>\n";
    // y axis with min/max ticks
    svg << "<line x1=\"" << left - 8 << "\" y1=\"" << y_of(vmax) << "\" x2=\"" << left - 8
        << "\" y2=\"" << y_of(vmin) << "\" stroke=\"black\"/>\n";
    for (double tick : {vmin + margin, vmax - margin}) {
        svg << "<text x=\"2\" y=\"" << y_of(tick) + 4 << "\" font-size=\"10\">"
            << format_double(tick).substr(0, 6) << "</text>\n";
    }
    int slot = 0;
    for (const auto& [label, values] : groups) {
        double cx = left + slot * (box_width + gap) + box_width / 2.0;
        auto stats = box_stats(values);
        // whiskers
        svg << "<line x1=\"" << cx << "\" y1=\"" << y_of(stats.lo) << "\" x2=\"" << cx
            << "\" y2=\"" << y_of(stats.hi) << "\" stroke=\"black\"/>\n";
        // box
        svg << "<rect x=\"" << cx - box_width / 2.0 << "\" y=\"" << y_of(stats.q3)
            << "\" width=\"" << box_width << "\" height=\""
            << std::max(1.0, y_of(stats.q1) - y_of(stats.q3))
            << "\" fill=\"#9ecae1\" stroke=\"black\"/>\n";
        // median
        svg << "<line x1=\"" << cx - box_width / 2.0 << "\" y1=\"" << y_of(stats.median)
            << "\" x2=\"" << cx + box_width / 2.0 << "\" y2=\"" << y_of(stats.median)
            << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        // slanted label
        svg << "<text x=\"" << cx << "\" y=\"" << plot_height + 34 << "\" font-size=\"9\" "
            << "transform=\"rotate(45 " << cx << " " << plot_height + 34 << ")\">" << label
            << "</text>\n";
        ++slot;
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_reports(const std::vector<RunRecord>& records, const std::string& out_dir,
                  bool force, bool emit_svg) {
    fs::path dir(out_dir);
    fs::create_directories(dir);
    if (fs::exists(dir / "runs.csv") && !force) {
        throw std::runtime_error("output already exists (use --force to overwrite): " +
                                 (dir / "runs.csv").string());
    }
    write_runs_csv(records, dir / "runs.csv");
    write_timings_csv(records, dir / "timings.csv");
    auto rows = summarize(records);
    write_summary_csv(rows, dir / "summary.csv");
    write_plot_data(records, dir);

    if (emit_svg) {
        std::set<std::pair<std::string, std::string>> keys;
        for (const auto& record : records) {
            if (record.skipped()) continue;
            for (const auto& [metric, value] : record.metrics) {
                if (metric == "ci_lo" || metric == "ci_hi" || metric == "precision" ||
                    metric == "recall") {
                    continue;
                }
                keys.emplace(record.dataset_id, metric);
            }
        }
        for (const auto& [dataset, metric] : keys) {
            std::string svg = render_box_chart_svg(records, dataset, metric);
            if (svg.empty()) continue;
            auto out = open_out(dir / ("chart_" + sanitize(dataset) + "_" + sanitize(metric) +
                                       ".svg"));
            out << svg;
        }
    }
}

}  // namespace privcd
