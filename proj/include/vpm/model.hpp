// model.hpp - market instances: bipartite multi-graphs whose edges carry
// finite discrete value distributions, plus realized profiles and arrival
// orders. Everything is immutable after construction and safe to share.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vpm {

// Finite distribution on non-negative reals. Values are pairwise distinct;
// probabilities sum to 1 within 1e-12. Zero-probability atoms are allowed
// and are never drawn.
struct DiscreteDistribution {
  std::vector<double> values;
  std::vector<double> probs;
};

struct EdgeSpec {
  int edge_id = 0;  // equals the index into MarketInstance::edges
  int left = 0;
  int right = 0;
  DiscreteDistribution dist;
};

// Bipartite multi-graph with |L| = n_left, |R| = n_right. Parallel edges
// (same endpoints) are allowed and keep distinct ids.
struct MarketInstance {
  int n_left = 0;
  int n_right = 0;
  std::vector<EdgeSpec> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
};

// Realized values, indexed by edge id.
using ValuationProfile = std::vector<double>;

// Permutation of edge ids; position t holds the id arriving at time t.
using ArrivalOrder = std::vector<int>;

struct Violation {
  std::string code;     // stable machine tag, e.g. "prob_sum"
  std::string message;  // human-readable detail
  int edge_id = -1;     // -1 when not tied to a single edge
};

inline constexpr double kProbSumTolerance = 1e-12;

// Structural checks; violations are data, not exceptions. Empty means ok.
std::vector<Violation> validate_instance(const MarketInstance& instance);

// Throws ValidationError listing the first few violations.
void require_valid(const MarketInstance& instance);

// Draws one value per edge, independently. Each edge uses the sub-stream
// derived from (trial_seed, edge_id), so adding or removing edges never
// perturbs the draws of the others.
ValuationProfile sample_profile(const MarketInstance& instance,
                                std::uint64_t trial_seed);

// Single draw from one distribution given a pre-derived stream seed.
double sample_value(const DiscreteDistribution& dist, std::uint64_t stream_seed);

double dist_mean(const DiscreteDistribution& dist);

// Largest support value over all parallel edges between (left, right);
// 0 when the pair has no edge.
double pair_value_ceiling(const MarketInstance& instance, int left, int right);

// True when `profile` assigns every edge a value from its own support.
bool profile_in_support(const MarketInstance& instance,
                        const ValuationProfile& profile);

bool is_permutation(const ArrivalOrder& order, int edge_count);

ArrivalOrder identity_order(int edge_count);

}  // namespace vpm
