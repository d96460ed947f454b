// bench.hpp - instance generators: the three-batch separation family whose
// offline/online gap approaches 9/4, and seeded random instances whose
// dyadic values keep exact-mode arithmetic exact.
#pragma once

#include <cstdint>

#include "vpm/model.hpp"

namespace vpm {

// The separation family on |L| = |R| = 3n vertices, edges in three batches:
//   batch 1: (i, i+n) and (i+n, i) for i in [0,n), deterministic value 1/2;
//   batch 2: (i, i+2n) and (i+2n, i), value 3/4 with probability 1/2 else 0;
//   batch 3: the complete block (i, j) for i, j in [0,n), value n with
//            probability 1/n^2 else 0.
// Edge ids run in batch order, so the canonical arrival order is the
// identity permutation.
struct LowerBoundInstance {
  MarketInstance instance;
  ArrivalOrder order;
};

LowerBoundInstance gen_lower_bound(int n);

// Seeded random bipartite multi-graph. Values live on the grid
// {k/8 : 1 <= k <= 16} times value_scale, probabilities are positive
// multiples of 1/8, and each support includes value 0 with probability 1/2.
// With value_scale = 1 every profile probability and short value sum is
// exact in double precision. max_support is capped at 8.
MarketInstance gen_random(int n_left, int n_right, int edge_count, int max_support,
                          double value_scale, std::uint64_t seed);

}  // namespace vpm
