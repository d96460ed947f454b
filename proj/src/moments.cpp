#include "vpm/moments.hpp"

#include <cmath>

#include "vpm/errors.hpp"
#include "vpm/matching.hpp"
#include "vpm/parallel.hpp"
#include "vpm/rng.hpp"

namespace vpm {

std::optional<std::uint64_t> support_product(const MarketInstance& instance,
                                             std::uint64_t cap) {
  std::uint64_t product = 1;
  for (const EdgeSpec& e : instance.edges) {
    const std::uint64_t size = e.dist.values.size();
    if (size == 0) return 0;
    if (product > cap / size) return std::nullopt;
    product *= size;
  }
  return product;
}

ProfileEnumerator::ProfileEnumerator(const MarketInstance& instance,
                                     std::uint64_t limit)
    : instance_(&instance),
      digits_(instance.edges.size(), 0),
      values_(instance.edges.size(), 0.0) {
  const auto product = support_product(instance, limit);
  if (!product || *product > limit)
    throw LimitError("profile enumeration needs more than " + std::to_string(limit) +
                     " profiles; use Monte Carlo instead");
  count_ = *product;
  for (const EdgeSpec& e : instance.edges)
    values_[e.edge_id] = e.dist.values.front();
}

double ProfileEnumerator::probability() const {
  double p = 1.0;
  for (std::size_t e = 0; e < digits_.size(); ++e)
    p *= instance_->edges[e].dist.probs[digits_[e]];
  return p;
}

bool ProfileEnumerator::advance() {
  // Mixed-radix increment, least significant digit at the highest edge id.
  for (std::size_t e = digits_.size(); e-- > 0;) {
    const DiscreteDistribution& dist = instance_->edges[e].dist;
    if (++digits_[e] < dist.values.size()) {
      values_[e] = dist.values[digits_[e]];
      return true;
    }
    digits_[e] = 0;
    values_[e] = dist.values.front();
  }
  return false;
}

ContributionMatrices compute_moments_exact(const MarketInstance& instance,
                                           std::uint64_t enumeration_limit) {
  require_valid(instance);
  const std::size_t n = instance.n_left;
  const std::size_t m = instance.n_right;

  ContributionMatrices result;
  result.M = Matrix(n, m);
  result.Q = Matrix(n, m);
  result.trials = 0;

  if (instance.edges.empty()) return result;

  ProfileEnumerator profiles(instance, enumeration_limit);
  do {
    const double p = profiles.probability();
    if (p == 0.0) continue;
    const MatchingResult opt = max_weight_matching(instance, profiles.values());
    for (int id : opt.chosen) {
      const EdgeSpec& e = instance.edges[id];
      result.M(e.left, e.right) += p * profiles.values()[id];
      result.Q(e.left, e.right) += p;
    }
  } while (profiles.advance());

  return result;
}

namespace {

// Sparse per-trial contribution: the optimal matching touches at most
// min(n, m) cells.
struct TrialCells {
  std::vector<std::pair<std::uint32_t, double>> cells;  // (flat index, value)
};

}  // namespace

ContributionMatrices compute_moments_mc(const MarketInstance& instance,
                                        std::uint64_t trials, std::uint64_t seed,
                                        int threads) {
  require_valid(instance);
  if (trials == 0) throw ValidationError("compute_moments_mc: trials must be >= 1");
  const std::size_t n = instance.n_left;
  const std::size_t m = instance.n_right;

  Matrix sum_value(n, m), sum_value_sq(n, m), hit_count(n, m);

  parallel_map_ordered<TrialCells>(
      trials, threads,
      [&](std::uint64_t t) {
        TrialCells out;
        const ValuationProfile profile =
            sample_profile(instance, derive_seed(seed, t));
        const MatchingResult opt = max_weight_matching(instance, profile);
        out.cells.reserve(opt.chosen.size());
        for (int id : opt.chosen) {
          const EdgeSpec& e = instance.edges[id];
          out.cells.push_back({static_cast<std::uint32_t>(e.left * m + e.right),
                               profile[id]});
        }
        return out;
      },
      [&](std::uint64_t, TrialCells&& cells) {
        for (const auto& [flat, v] : cells.cells) {
          sum_value.data()[flat] += v;
          sum_value_sq.data()[flat] += v * v;
          hit_count.data()[flat] += 1.0;
        }
      });

  ContributionMatrices result;
  result.M = Matrix(n, m);
  result.Q = Matrix(n, m);
  result.stderr_M = Matrix(n, m);
  result.stderr_Q = Matrix(n, m);
  result.trials = trials;

  const double T = static_cast<double>(trials);
  for (std::size_t flat = 0; flat < n * m; ++flat) {
    const double s1 = sum_value.data()[flat];
    const double s2 = sum_value_sq.data()[flat];
    const double c = hit_count.data()[flat];
    result.M.data()[flat] = s1 / T;
    result.Q.data()[flat] = c / T;
    if (trials >= 2) {
      // Sample variance; the indicator's square equals itself.
      const double var_m = std::max(0.0, (s2 - s1 * s1 / T) / (T - 1.0));
      const double var_q = std::max(0.0, (c - c * c / T) / (T - 1.0));
      result.stderr_M->data()[flat] = std::sqrt(var_m / T);
      result.stderr_Q->data()[flat] = std::sqrt(var_q / T);
    }
  }
  return result;
}

double prophet_value(const ContributionMatrices& moments) { return moments.M.sum(); }

}  // namespace vpm
