#pragma once

#include <map>
#include <optional>
#include <utility>

#include "privcd/ci.hpp"
#include "privcd/graph.hpp"

namespace privcd {

struct PcOptions {
    // Cap on conditioning-set size; unset means exhaust current adjacencies.
    std::optional<int> max_cond_size;
};

// Removal bookkeeping from the skeleton phase: for each removed edge, the
// separating set and the p-value of the test that removed it.
struct PcDiagnostics {
    std::map<std::pair<int, int>, std::vector<int>> sepsets;
    std::map<std::pair<int, int>, double> removal_p;
};

// PC-stable: level-wise adjacency search with conditioning sets drawn from
// the adjacency snapshot taken at the start of each level and removals
// applied when the level completes, v-structure orientation from recorded
// separating sets, then Meek rules to closure. The output is CPDAG-shaped.
MixedGraph pc_from_oracle(CiOracle& oracle, const std::vector<std::string>& names,
                          const PcOptions& options = {}, PcDiagnostics* diagnostics = nullptr);

MixedGraph pc(const Dataset& ds, const CiTestConfig& cfg, const PcOptions& options = {},
              PcDiagnostics* diagnostics = nullptr);

// Test-harness variant: the CI test is exact d-separation on the known DAG,
// so the result must equal cpdag_of(dag).
MixedGraph pc_with_oracle(const Dag& dag);

}  // namespace privcd
