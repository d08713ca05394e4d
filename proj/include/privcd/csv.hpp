#pragma once

#include <string>

#include "privcd/domain.hpp"

namespace privcd {

// Reads a rectangular numeric CSV ('.' decimal point, comma separator).
// Column names come from the header when has_header is true, otherwise
// "col0..col{d-1}". Throws std::runtime_error on an empty file, a ragged
// row, or a non-numeric cell ("non-numeric cell at row R, col C" with R the
// 1-based file line and C the 0-based column).
ContinuousTable ingest_csv(const std::string& path, bool has_header);

// Writes with 17 significant digits so ingest(write(t)) round-trips.
void write_csv(const ContinuousTable& table, const std::string& path);

// Discretized datasets travel as a CSV of integer category indices plus a
// sidecar JSON file {"dims":[...],"names":[...]} at sidecar_path(path).
std::string sidecar_path(const std::string& dataset_csv_path);
void write_dataset(const Dataset& ds, const std::string& path);
Dataset read_dataset(const std::string& path);

}  // namespace privcd
