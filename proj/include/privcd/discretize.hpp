#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "privcd/domain.hpp"

namespace privcd {

// Bin-count rule max(2, floor(min(u, 100, 0.1*u))) where u is the number of
// distinct values. The raw rule drops below 2 for u < 20; clamping keeps the
// downstream mechanisms (which need k >= 2) valid.
std::int64_t choose_bin_count(std::int64_t distinct_values);

// Uniform bins over [lo, hi]: v maps to floor((v - lo) / (hi - lo) * bins),
// the upper edge falls in the last bin, and out-of-range values clamp to the
// edge bins (the fixed range is an estimate of the population min/max, so
// data may exceed it). When ranges is empty the per-column min/max is used.
// Throws on bins < 2 or a degenerate range (hi <= lo).
Dataset discretize(const ContinuousTable& table, const std::vector<std::int64_t>& bins,
                   const std::vector<std::optional<std::pair<double, double>>>& ranges = {});

// Distinct-value count per column (exact, by sorting).
std::vector<std::int64_t> distinct_counts(const ContinuousTable& table);

}  // namespace privcd
