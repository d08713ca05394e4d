#include "privcd/domain.hpp"

#include <limits>
#include <stdexcept>

namespace privcd {

namespace {

void check_dims(const std::vector<std::int64_t>& dims) {
    if (dims.empty()) {
        throw std::invalid_argument("Domain: needs at least one attribute");
    }
    for (std::int64_t k : dims) {
        if (k < 2) {
            throw std::invalid_argument("Domain: every cardinality must be >= 2");
        }
    }
}

}  // namespace

Domain::Domain(std::vector<std::int64_t> dims_in, std::vector<std::string> names_in)
    : dims(std::move(dims_in)), names(std::move(names_in)) {
    check_dims(dims);
    if (names.size() != dims.size()) {
        throw std::invalid_argument("Domain: names and dims must have equal length");
    }
}

Domain::Domain(std::vector<std::int64_t> dims_in) : dims(std::move(dims_in)) {
    check_dims(dims);
    names.reserve(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
        names.push_back("col" + std::to_string(i));
    }
}

std::optional<std::uint64_t> Domain::combined_size() const {
    std::uint64_t k = 1;
    for (std::int64_t dim : dims) {
        std::uint64_t d = static_cast<std::uint64_t>(dim);
        if (k > std::numeric_limits<std::uint64_t>::max() / d) {
            return std::nullopt;
        }
        k *= d;
    }
    return k;
}

void validate_dataset(const Dataset& ds) {
    if (ds.rows.empty()) {
        throw std::invalid_argument("Dataset: needs at least one row");
    }
    const std::size_t d = ds.domain.arity();
    for (std::size_t r = 0; r < ds.rows.size(); ++r) {
        if (ds.rows[r].size() != d) {
            throw std::invalid_argument("Dataset: ragged row " + std::to_string(r));
        }
        for (std::size_t i = 0; i < d; ++i) {
            std::int64_t v = ds.rows[r][i];
            if (v < 0 || v >= ds.domain.dims[i]) {
                throw std::invalid_argument("Dataset: value out of range at row " +
                                            std::to_string(r) + ", col " + std::to_string(i));
            }
        }
    }
}

std::uint64_t flatten_index(const Domain& domain, const Record& record) {
    if (record.size() != domain.arity()) {
        throw std::invalid_argument("flatten_index: record arity mismatch");
    }
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < record.size(); ++i) {
        if (record[i] < 0 || record[i] >= domain.dims[i]) {
            throw std::invalid_argument("flatten_index: coordinate out of range");
        }
        index = index * static_cast<std::uint64_t>(domain.dims[i]) +
                static_cast<std::uint64_t>(record[i]);
    }
    return index;
}

Record unflatten_index(const Domain& domain, std::uint64_t index) {
    Record record(domain.arity());
    for (std::size_t i = domain.arity(); i-- > 0;) {
        std::uint64_t k = static_cast<std::uint64_t>(domain.dims[i]);
        record[i] = static_cast<std::int64_t>(index % k);
        index /= k;
    }
    if (index != 0) {
        throw std::invalid_argument("unflatten_index: index out of range");
    }
    return record;
}

}  // namespace privcd
