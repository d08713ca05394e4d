#pragma once

#include <vector>

#include "privcd/dag.hpp"

namespace privcd {

// Exact d-separation on a known DAG via the reachability formulation
// (active-trail search with the ancestors of the conditioning set).
bool d_separated(const Dag& dag, int x, int y, const std::vector<int>& cond);

}  // namespace privcd
