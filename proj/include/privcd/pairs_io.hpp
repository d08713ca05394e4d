#pragma once

#include <string>
#include <vector>

#include "privcd/pairwise.hpp"

namespace privcd {

// One loaded cause-effect pair. truth_direction refers to the (x, y)
// ordering after the metadata's cause/effect columns are applied, so it is
// always x_to_y; x holds the cause column's values.
struct LoadedPair {
    std::string id;
    std::vector<double> x;
    std::vector<double> y;
    double weight = 1.0;
    Direction truth_direction = Direction::x_to_y;
};

// Reads a directory of two-column whitespace-separated pair files
// ("pair<ID>.txt") plus a metadata file "pairmeta.txt" with lines
//   <id> <cause_col> <effect_col> <weight>
// where columns are 1-based positions in the pair file. Pairs present in
// the metadata but missing a data file (or vice versa) are an error.
std::vector<LoadedPair> ingest_pairs_dir(const std::string& path);

// Converter stub for the upstream tuebingen-style metadata
// (<id> <cause_first> <cause_last> <effect_first> <effect_last> <weight>):
// scalar pairs convert directly; multivariate pairs are skipped with a
// warning line on the returned report.
std::string convert_upstream_pairmeta(const std::string& upstream_path,
                                      const std::string& output_path);

}  // namespace privcd
