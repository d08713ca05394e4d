#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace privcd {

// A record is one row of category indices, values[i] in [0, dims[i]).
using Record = std::vector<std::int64_t>;

// Discrete product domain: per-attribute category counts and names.
struct Domain {
    std::vector<std::int64_t> dims;
    std::vector<std::string> names;

    Domain() = default;
    Domain(std::vector<std::int64_t> dims_in, std::vector<std::string> names_in);

    // Convenience: names default to "col0..col{d-1}".
    explicit Domain(std::vector<std::int64_t> dims_in);

    std::size_t arity() const { return dims.size(); }

    // K = prod(dims), or nullopt when the product overflows 64 bits
    // ("oversized" rather than a wrapped value).
    std::optional<std::uint64_t> combined_size() const;

    friend bool operator==(const Domain&, const Domain&) = default;
};

struct Dataset {
    Domain domain;
    std::vector<Record> rows;

    std::size_t n() const { return rows.size(); }
    std::size_t arity() const { return domain.arity(); }
};

// Throws std::invalid_argument when a row is ragged or a value is out of
// its attribute's range, or when the dataset is empty.
void validate_dataset(const Dataset& ds);

// Named real-valued columns of equal length; staging area before
// discretization. Values are finite (NaN/inf rejected at ingest).
struct ContinuousTable {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    std::size_t arity() const { return columns.size(); }
    std::size_t n() const { return columns.empty() ? 0 : columns.front().size(); }
};

// Mixed-radix flattening of a record into a single index in [0, K), with
// the last attribute varying fastest. Inverse of unflatten_index.
std::uint64_t flatten_index(const Domain& domain, const Record& record);
Record unflatten_index(const Domain& domain, std::uint64_t index);

}  // namespace privcd
