#pragma once

#include <string>
#include <vector>

#include "privcd/experiment.hpp"

namespace privcd {

// Writes runs.csv, summary.csv, per-(dataset, metric) plot-data CSVs, a
// timings.csv with wall clocks, and (optionally) minimal SVG box charts.
// Refuses to overwrite an existing runs.csv unless force is set.
//
// Wall times live in timings.csv, not runs.csv, so that runs.csv is
// byte-identical across repeated runs of the same seed.
void emit_reports(const std::vector<RunRecord>& records, const std::string& out_dir,
                  bool force, bool emit_svg);

// One box-style chart of a metric's distribution per (mechanism, level)
// group. Exposed for the CLI's evaluate/report paths.
std::string render_box_chart_svg(const std::vector<RunRecord>& records,
                                 const std::string& dataset_id, const std::string& metric);

}  // namespace privcd
