#include "vpm/oracle.hpp"

#include <algorithm>
#include <unordered_map>

#include "vpm/errors.hpp"
#include "vpm/matching.hpp"

namespace vpm {

namespace {

class BackwardInduction {
 public:
  BackwardInduction(const MarketInstance& instance, const ArrivalOrder& order)
      : instance_(instance), order_(order), horizon_(static_cast<int>(order.size())) {
    // Vertices incident to edges from position t onward; availability of any
    // other vertex cannot influence the future, so it is masked out of keys.
    future_left_.assign(horizon_ + 1, 0);
    future_right_.assign(horizon_ + 1, 0);
    for (int t = horizon_ - 1; t >= 0; --t) {
      const EdgeSpec& e = instance_.edges[order_[t]];
      future_left_[t] = future_left_[t + 1] | (1u << e.left);
      future_right_[t] = future_right_[t + 1] | (1u << e.right);
    }
  }

  double value() {
    const std::uint32_t all_left = (1u << instance_.n_left) - 1;
    const std::uint32_t all_right = (1u << instance_.n_right) - 1;
    return solve(0, all_left, all_right);
  }

 private:
  double solve(int pos, std::uint32_t free_left, std::uint32_t free_right) {
    if (pos == horizon_) return 0.0;
    const std::uint64_t key = (static_cast<std::uint64_t>(pos) << 24) |
                              (static_cast<std::uint64_t>(free_left & future_left_[pos])
                               << 12) |
                              (free_right & future_right_[pos]);
    const auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;

    const EdgeSpec& e = instance_.edges[order_[pos]];
    const double if_rejected = solve(pos + 1, free_left, free_right);
    const bool endpoints_free =
        (free_left >> e.left & 1u) && (free_right >> e.right & 1u);
    double take_continuation = 0.0;
    if (endpoints_free)
      take_continuation =
          solve(pos + 1, free_left & ~(1u << e.left), free_right & ~(1u << e.right));

    double total = 0.0;
    for (std::size_t a = 0; a < e.dist.values.size(); ++a) {
      const double p = e.dist.probs[a];
      if (p == 0.0) continue;
      double best = if_rejected;
      if (endpoints_free)
        best = std::max(best, e.dist.values[a] + take_continuation);
      total += p * best;
    }
    memo_.emplace(key, total);
    return total;
  }

  const MarketInstance& instance_;
  const ArrivalOrder& order_;
  int horizon_;
  std::vector<std::uint32_t> future_left_, future_right_;
  std::unordered_map<std::uint64_t, double> memo_;
};

}  // namespace

double optimal_online_value(const MarketInstance& instance, const ArrivalOrder& order) {
  require_valid(instance);
  if (!is_permutation(order, instance.edge_count()))
    throw ValidationError("order is not a permutation of the edge ids");
  if (instance.n_left + instance.n_right > kDpVertexLimit)
    throw LimitError("optimal_online_value: needs n_left + n_right <= " +
                     std::to_string(kDpVertexLimit) + ", have " +
                     std::to_string(instance.n_left + instance.n_right));
  if (instance.edge_count() > kDpEdgeLimit)
    throw LimitError("optimal_online_value: needs at most " +
                     std::to_string(kDpEdgeLimit) + " edges");

  return BackwardInduction(instance, order).value();
}

double exact_opt_value(const MarketInstance& instance, std::uint64_t enumeration_limit) {
  require_valid(instance);
  double expectation = 0.0;
  ProfileEnumerator profiles(instance, enumeration_limit);
  do {
    const double p = profiles.probability();
    if (p == 0.0) continue;
    expectation += p * max_weight_value(instance, profiles.values());
  } while (profiles.advance());
  return expectation;
}

}  // namespace vpm
