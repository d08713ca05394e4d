#pragma once

#include <memory>
#include <string>
#include <vector>

#include "privcd/dag.hpp"
#include "privcd/domain.hpp"

namespace privcd {

enum class CiTestKind { chi_square, fisher_z };

CiTestKind ci_test_from_string(const std::string& s);
std::string to_string(CiTestKind kind);

struct CiTestConfig {
    CiTestKind test = CiTestKind::chi_square;
    double alpha = 0.05;
};

struct CiResult {
    bool independent = false;
    double p_value = 0.0;
    double statistic = 0.0;
    // Set when the data could not support the test (no usable strata,
    // constant column, singular correlation submatrix).
    bool flagged = false;
};

// Pearson chi-square summed over conditioning strata. Degrees of freedom per
// stratum use the observed nonzero marginals; strata contributing no degrees
// of freedom are skipped. With no testable stratum at all the pair is
// declared independent with p = 1 and flagged untestable.
CiResult chi_square_ci(const Dataset& ds, int i, int j, const std::vector<int>& cond,
                       double alpha);

// Fisher-Z on category indices treated as numeric: partial correlation via
// correlation-matrix inversion, z = atanh(r) * sqrt(n - |cond| - 3),
// two-sided normal p-value. A singular submatrix gets ridge 1e-10 and a
// flag; a constant column is flagged independent.
CiResult fisher_z_ci(const Dataset& ds, int i, int j, const std::vector<int>& cond,
                     double alpha);

// Conditional-independence oracle interface used by the PC skeleton search.
class CiOracle {
public:
    virtual ~CiOracle() = default;
    virtual CiResult test(int i, int j, const std::vector<int>& cond) = 0;
    virtual std::size_t variable_count() const = 0;
};

class DataCiOracle final : public CiOracle {
public:
    DataCiOracle(const Dataset& ds, CiTestConfig cfg) : ds_(ds), cfg_(cfg) {}
    CiResult test(int i, int j, const std::vector<int>& cond) override;
    std::size_t variable_count() const override { return ds_.arity(); }

private:
    const Dataset& ds_;
    CiTestConfig cfg_;
};

// Exact answers from a known DAG; p-value is 1 for separation, 0 otherwise.
class DsepOracle final : public CiOracle {
public:
    explicit DsepOracle(Dag dag) : dag_(std::move(dag)) {}
    CiResult test(int i, int j, const std::vector<int>& cond) override;
    std::size_t variable_count() const override {
        return static_cast<std::size_t>(dag_.node_count);
    }

private:
    Dag dag_;
};

}  // namespace privcd
