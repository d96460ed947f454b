// oracle.hpp - exact baselines for tiny instances: the optimal adaptive
// online value by backward induction over (time, free-vertex sets), and the
// exact expected offline optimum by support enumeration.
#pragma once

#include <cstdint>

#include "vpm/model.hpp"
#include "vpm/moments.hpp"

namespace vpm {

inline constexpr int kDpVertexLimit = 12;  // n_left + n_right
inline constexpr int kDpEdgeLimit = 64;

// Value of the best adaptive online policy for the given arrival order.
// States are (position, free vertices); masks are projected onto the
// vertices still incident to future edges, which keeps the table small.
double optimal_online_value(const MarketInstance& instance, const ArrivalOrder& order);

// Expected value of the offline optimum: sum over all profiles of
// probability times the max-weight matching value.
double exact_opt_value(const MarketInstance& instance,
                       std::uint64_t enumeration_limit = kDefaultEnumerationLimit);

}  // namespace vpm
