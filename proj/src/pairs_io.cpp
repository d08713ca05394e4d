#include "privcd/pairs_io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace privcd {

namespace {

struct MetaEntry {
    int cause_col = 1;
    int effect_col = 2;
    double weight = 1.0;
};

std::vector<std::vector<double>> read_pair_columns(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open pair file: " + path);
    }
    std::vector<std::vector<double>> columns;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream row(line);
        std::vector<double> values;
        double v;
        while (row >> v) values.push_back(v);
        if (values.empty()) continue;  // blank line
        if (columns.empty()) columns.resize(values.size());
        if (values.size() != columns.size()) {
            throw std::runtime_error("malformed pair file (ragged row " +
                                     std::to_string(line_no) + "): " + path);
        }
        for (std::size_t c = 0; c < values.size(); ++c) {
            if (!std::isfinite(values[c])) {
                throw std::runtime_error("non-finite value in pair file: " + path);
            }
            columns[c].push_back(values[c]);
        }
    }
    if (columns.empty()) {
        throw std::runtime_error("empty pair file: " + path);
    }
    return columns;
}

}  // namespace

std::vector<LoadedPair> ingest_pairs_dir(const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path dir(path);
    const fs::path meta_path = dir / "pairmeta.txt";
    std::ifstream meta(meta_path);
    if (!meta) {
        throw std::runtime_error("missing metadata file: " + meta_path.string());
    }

    std::vector<std::pair<std::string, MetaEntry>> entries;
    std::string line;
    while (std::getline(meta, line)) {
        std::istringstream row(line);
        std::string id;
        MetaEntry entry;
        if (!(row >> id)) continue;  // blank line
        if (!(row >> entry.cause_col >> entry.effect_col >> entry.weight)) {
            throw std::runtime_error("malformed metadata line: " + line);
        }
        entries.emplace_back(id, entry);
    }
    if (entries.empty()) {
        throw std::runtime_error("metadata file has no entries: " + meta_path.string());
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<LoadedPair> pairs;
    for (const auto& [id, entry] : entries) {
        fs::path pair_path = dir / ("pair" + id + ".txt");
        if (!fs::exists(pair_path)) {
            throw std::runtime_error("missing metadata entry's data file: " +
                                     pair_path.string());
        }
        auto columns = read_pair_columns(pair_path.string());
        auto column_at = [&](int one_based) -> std::vector<double>& {
            if (one_based < 1 || static_cast<std::size_t>(one_based) > columns.size()) {
                throw std::runtime_error("metadata column out of range for pair " + id);
            }
            return columns[static_cast<std::size_t>(one_based - 1)];
        };
        LoadedPair pair;
        pair.id = id;
        pair.x = column_at(entry.cause_col);
        pair.y = column_at(entry.effect_col);
        pair.weight = entry.weight;
        pair.truth_direction = Direction::x_to_y;
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

std::string convert_upstream_pairmeta(const std::string& upstream_path,
                                      const std::string& output_path) {
    std::ifstream in(upstream_path);
    if (!in) {
        throw std::runtime_error("cannot open metadata file: " + upstream_path);
    }
    std::ofstream out(output_path);
    if (!out) {
        throw std::runtime_error("cannot write metadata file: " + output_path);
    }
    std::string report;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string id;
        int cause_first, cause_last, effect_first, effect_last;
        double weight;
        if (!(row >> id)) continue;
        if (!(row >> cause_first >> cause_last >> effect_first >> effect_last >> weight)) {
            report += "skipped malformed line: " + line + "\n";
            continue;
        }
        if (cause_first != cause_last || effect_first != effect_last) {
            report += "skipped multivariate pair " + id + "\n";
            continue;
        }
        out << id << ' ' << cause_first << ' ' << effect_first << ' ' << weight << '\n';
    }
    return report;
}

}  // namespace privcd
