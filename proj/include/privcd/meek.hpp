#pragma once

#include "privcd/dag.hpp"
#include "privcd/graph.hpp"

namespace privcd {

// Orients the undirected edge from->to unless the pair already carries a
// directed edge; returns whether the graph changed. An existing opposite
// orientation wins (first orientation sticks), which keeps conflicting
// v-structure claims on noisy data deterministic.
bool orient_if_possible(MixedGraph& g, int from, int to);

// Meek rules R1-R4 applied to a fixpoint:
//   R1: a->b, b-c, a,c nonadjacent          => b->c
//   R2: a->b->c, a-c                        => a->c
//   R3: a-b, a-c, a-d, c->b, d->b, c,d n.a. => a->b
//   R4: a-b, a-c, c->d, d->b, b,c n.a.,
//       a,d adjacent                        => a->b
void apply_meek_rules(MixedGraph& g);

// Pattern (CPDAG) of a DAG: keep the skeleton, direct exactly the edges in
// v-structures, close under the Meek rules.
MixedGraph cpdag_of(const Dag& dag);

}  // namespace privcd
