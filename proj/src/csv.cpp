#include "privcd/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace privcd {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& cell, double& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

ContinuousTable ingest_csv(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    ContinuousTable table;
    std::string line;
    std::size_t line_no = 0;
    bool saw_data = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
        auto cells = split_line(line);
        if (line_no == 1 && has_header) {
            for (auto& cell : cells) table.names.push_back(trim(cell));
            table.columns.resize(cells.size());
            continue;
        }
        if (table.columns.empty()) {
            table.columns.resize(cells.size());
        } else if (cells.size() != table.columns.size()) {
            throw std::runtime_error("ragged row at line " + std::to_string(line_no) +
                                     ": expected " + std::to_string(table.columns.size()) +
                                     " cells, got " + std::to_string(cells.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double value = 0.0;
            if (!parse_double(trim(cells[c]), value)) {
                throw std::runtime_error("non-numeric cell at row " + std::to_string(line_no) +
                                         ", col " + std::to_string(c));
            }
            table.columns[c].push_back(value);
        }
        saw_data = true;
    }
    if (!saw_data) {
        throw std::runtime_error("empty file: " + path);
    }
    if (table.names.empty()) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            table.names.push_back("col" + std::to_string(c));
        }
    }
    return table;
}

void write_csv(const ContinuousTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    for (std::size_t c = 0; c < table.names.size(); ++c) {
        out << (c ? "," : "") << table.names[c];
    }
    out << '\n';
    char buf[64];
    for (std::size_t r = 0; r < table.n(); ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", table.columns[c][r]);
            out << (c ? "," : "") << buf;
        }
        out << '\n';
    }
}

std::string sidecar_path(const std::string& dataset_csv_path) {
    std::string base = dataset_csv_path;
    if (base.size() >= 4 && base.substr(base.size() - 4) == ".csv") {
        base = base.substr(0, base.size() - 4);
    }
    return base + ".dims.json";
}

void write_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    for (std::size_t c = 0; c < ds.domain.names.size(); ++c) {
        out << (c ? "," : "") << ds.domain.names[c];
    }
    out << '\n';
    for (const auto& row : ds.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << row[c];
        }
        out << '\n';
    }

    nlohmann::json sidecar;
    sidecar["dims"] = ds.domain.dims;
    sidecar["names"] = ds.domain.names;
    std::ofstream side(sidecar_path(path));
    if (!side) {
        throw std::runtime_error("cannot write file: " + sidecar_path(path));
    }
    side << sidecar.dump(2) << '\n';
}

Dataset read_dataset(const std::string& path) {
    std::ifstream side(sidecar_path(path));
    if (!side) {
        throw std::runtime_error("missing dims sidecar: " + sidecar_path(path));
    }
    nlohmann::json sidecar = nlohmann::json::parse(side);
    Domain domain(sidecar.at("dims").get<std::vector<std::int64_t>>(),
                  sidecar.at("names").get<std::vector<std::string>>());

    ContinuousTable table = ingest_csv(path, /*has_header=*/true);
    if (table.arity() != domain.arity()) {
        throw std::runtime_error("dataset/sidecar arity mismatch for " + path);
    }
    Dataset ds;
    ds.domain = std::move(domain);
    ds.rows.resize(table.n(), Record(table.arity()));
    for (std::size_t r = 0; r < table.n(); ++r) {
        for (std::size_t c = 0; c < table.arity(); ++c) {
            double v = table.columns[c][r];
            std::int64_t iv = static_cast<std::int64_t>(std::llround(v));
            if (std::fabs(v - static_cast<double>(iv)) > 1e-9) {
                throw std::runtime_error("non-integer category value in " + path);
            }
            ds.rows[r][c] = iv;
        }
    }
    validate_dataset(ds);
    return ds;
}

}  // namespace privcd
