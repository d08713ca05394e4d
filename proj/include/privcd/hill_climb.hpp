#pragma once

#include "privcd/dag.hpp"
#include "privcd/domain.hpp"

namespace privcd {

// Greedy DAG search over add/delete/reverse moves maximizing the decomposable
// score  sum_i [ loglik_i - penalty_discount * (ln n / 2) * q_i * (k_i - 1) ]
// where loglik_i is the multinomial log-likelihood of node i given its
// parents and q_i the number of parent configurations. Moves are scanned in
// lexicographic edge order and only strict improvements are taken, so the
// search is deterministic and stops at the first local optimum.
Dag bic_hill_climb(const Dataset& ds, double penalty_discount = 1.0);

// Local score of one node given a parent set (exposed for the tests).
double bic_node_score(const Dataset& ds, int node, const std::vector<int>& parents,
                      double penalty_discount);

}  // namespace privcd
