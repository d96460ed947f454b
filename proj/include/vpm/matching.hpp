// matching.hpp - exact max-weight bipartite matching on realized profiles.
//
// Among maximum-weight matchings the canonical one is returned: the matching
// whose ascending edge-id list is lexicographically smallest. Zero-value
// edges are never chosen. The canonical rule makes downstream expectation
// matrices reproducible.
#pragma once

#include "vpm/model.hpp"

namespace vpm {

struct MatchingResult {
  std::vector<int> chosen;  // edge ids, ascending
  double value = 0.0;       // sum of realized values of chosen edges
};

// Exact maximum plus canonical tie-break. Works per connected component of
// the positive-value subgraph, so sparse realizations stay cheap.
MatchingResult max_weight_matching(const MarketInstance& instance,
                                   const ValuationProfile& profile);

// Value-only fast path (no tie-break bookkeeping); same optimum.
double max_weight_value(const MarketInstance& instance,
                        const ValuationProfile& profile);

// Exhaustive oracle over all matchings, same canonical rule. |E| <= 20.
MatchingResult brute_force_matching(const MarketInstance& instance,
                                    const ValuationProfile& profile);

inline constexpr int kBruteForceEdgeLimit = 20;

}  // namespace vpm
