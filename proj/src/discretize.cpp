#include "privcd/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace privcd {

std::int64_t choose_bin_count(std::int64_t distinct_values) {
    if (distinct_values < 1) {
        throw std::invalid_argument("choose_bin_count: distinct count must be >= 1");
    }
    double u = static_cast<double>(distinct_values);
    double raw = std::min({u, 100.0, 0.1 * u});
    return std::max<std::int64_t>(2, static_cast<std::int64_t>(std::floor(raw)));
}

Dataset discretize(const ContinuousTable& table, const std::vector<std::int64_t>& bins,
                   const std::vector<std::optional<std::pair<double, double>>>& ranges) {
    const std::size_t d = table.arity();
    if (d == 0 || table.n() == 0) {
        throw std::invalid_argument("discretize: empty table");
    }
    if (bins.size() != d) {
        throw std::invalid_argument("discretize: one bin count per column required");
    }
    if (!ranges.empty() && ranges.size() != d) {
        throw std::invalid_argument("discretize: one range per column required");
    }

    std::vector<double> lo(d), hi(d);
    for (std::size_t c = 0; c < d; ++c) {
        if (bins[c] < 2) {
            throw std::invalid_argument("discretize: bins must be >= 2 (col " +
                                        std::to_string(c) + ")");
        }
        if (!ranges.empty() && ranges[c].has_value()) {
            lo[c] = ranges[c]->first;
            hi[c] = ranges[c]->second;
        } else {
            auto [mn, mx] = std::minmax_element(table.columns[c].begin(), table.columns[c].end());
            lo[c] = *mn;
            hi[c] = *mx;
        }
        if (!(hi[c] > lo[c])) {
            throw std::invalid_argument("discretize: degenerate range (col " +
                                        std::to_string(c) + ")");
        }
    }

    Dataset ds;
    ds.domain = Domain(bins, table.names);
    ds.rows.resize(table.n(), Record(d));
    for (std::size_t c = 0; c < d; ++c) {
        const double width = hi[c] - lo[c];
        const double k = static_cast<double>(bins[c]);
        for (std::size_t r = 0; r < table.n(); ++r) {
            double v = table.columns[c][r];
            std::int64_t bin;
            if (v <= lo[c]) {
                bin = 0;
            } else if (v >= hi[c]) {
                bin = bins[c] - 1;
            } else {
                bin = static_cast<std::int64_t>(std::floor((v - lo[c]) / width * k));
                bin = std::clamp<std::int64_t>(bin, 0, bins[c] - 1);
            }
            ds.rows[r][c] = bin;
        }
    }
    return ds;
}

std::vector<std::int64_t> distinct_counts(const ContinuousTable& table) {
    std::vector<std::int64_t> counts;
    counts.reserve(table.arity());
    for (const auto& column : table.columns) {
        std::vector<double> sorted = column;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        counts.push_back(static_cast<std::int64_t>(sorted.size()));
    }
    return counts;
}

}  // namespace privcd
