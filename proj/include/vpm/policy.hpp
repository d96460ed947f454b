// policy.hpp - the vertex-additive online policy and its simulators.
//
// The policy carries one threshold per vertex and accepts an arriving edge
// iff both endpoints are still free and the realized value is at least the
// sum of the endpoint thresholds (non-strict, which matters on atoms).
// Accepted welfare splits into revenue (threshold payments, attributable to
// the covered vertices) and surplus (the excess above them).
#pragma once

#include <cstdint>
#include <string>

#include "vpm/model.hpp"
#include "vpm/pricing.hpp"

namespace vpm {

struct PolicyRunRecord {
  std::vector<int> accepted;  // edge ids in acceptance order
  double welfare = 0.0;       // sum of accepted values
  double revenue = 0.0;       // sum of thresholds over covered vertices
  double surplus = 0.0;       // welfare - revenue, exactly
  std::vector<int> covered_left;   // ascending vertex ids
  std::vector<int> covered_right;  // ascending vertex ids
};

PolicyRunRecord run_vadd(const MarketInstance& instance, const PriceVector& prices,
                         const ArrivalOrder& order, const ValuationProfile& profile);

struct TaggedOrder {
  std::string tag;
  ArrivalOrder order;
};

// Expands a comma-separated strategy spec into concrete arrival orders:
//   random:K          K seeded uniform permutations
//   batch-lb          identity order (the generator's batch order)
//   ascending-mean    edges sorted by distribution mean, ties by id
//   descending-mean   reverse mean order, ties by id
//   exhaustive        all T! permutations; requires T <= 8
std::vector<TaggedOrder> expand_orders(const MarketInstance& instance,
                                       const std::string& spec, std::uint64_t seed);

inline constexpr int kExhaustiveOrderEdgeLimit = 8;

struct SimulationReport {
  std::string order_tag;
  std::uint64_t trials = 0;
  double mean_welfare = 0.0;
  double stderr_welfare = 0.0;
  double mean_revenue = 0.0;
  double mean_surplus = 0.0;
  double mean_opt = 0.0;  // offline optimum on the same profiles
  double stderr_opt = 0.0;
  double ratio = 0.0;  // mean_opt / mean_welfare
};

struct SimulationSet {
  std::vector<SimulationReport> reports;  // one per order, input order
  std::size_t worst_index = 0;            // smallest mean welfare
};

// One profile per trial (seed-derived), every order evaluated on it plus the
// offline optimum once; paired sampling keeps the ratio estimates tight.
// Deterministic for any thread count.
SimulationSet simulate(const MarketInstance& instance, const PriceVector& prices,
                       const std::vector<TaggedOrder>& orders, std::uint64_t trials,
                       std::uint64_t seed, int threads = 1);

struct ExactPolicyExpectation {
  double welfare = 0.0;
  double revenue = 0.0;
  double surplus = 0.0;
  double opt = 0.0;
};

// Full support enumeration instead of sampling; see kDefaultEnumerationLimit.
ExactPolicyExpectation exact_expected_welfare(
    const MarketInstance& instance, const PriceVector& prices, const ArrivalOrder& order,
    std::uint64_t enumeration_limit = kDefaultEnumerationLimit);

}  // namespace vpm
