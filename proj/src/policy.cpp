#include "vpm/policy.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include "vpm/errors.hpp"
#include "vpm/matching.hpp"
#include "vpm/parallel.hpp"
#include "vpm/rng.hpp"

namespace vpm {

namespace {

void check_policy_inputs(const MarketInstance& instance, const PriceVector& prices) {
  if (prices.l.size() != static_cast<std::size_t>(instance.n_left) ||
      prices.r.size() != static_cast<std::size_t>(instance.n_right))
    throw ValidationError("prices: dimensions (" + std::to_string(prices.l.size()) +
                          "," + std::to_string(prices.r.size()) +
                          ") do not match instance (" + std::to_string(instance.n_left) +
                          "," + std::to_string(instance.n_right) + ")");
}

}  // namespace

PolicyRunRecord run_vadd(const MarketInstance& instance, const PriceVector& prices,
                         const ArrivalOrder& order, const ValuationProfile& profile) {
  check_policy_inputs(instance, prices);
  if (!is_permutation(order, instance.edge_count()))
    throw ValidationError("order is not a permutation of the edge ids");
  if (profile.size() != instance.edges.size())
    throw ValidationError("profile length does not match edge count");

  PolicyRunRecord record;
  std::vector<char> free_left(instance.n_left, 1), free_right(instance.n_right, 1);

  for (int id : order) {
    const EdgeSpec& e = instance.edges[id];
    if (!free_left[e.left] || !free_right[e.right]) continue;
    const double value = profile[id];
    if (value >= prices.l[e.left] + prices.r[e.right]) {
      free_left[e.left] = 0;
      free_right[e.right] = 0;
      record.accepted.push_back(id);
      record.welfare += value;
    }
  }

  for (int i = 0; i < instance.n_left; ++i)
    if (!free_left[i]) record.covered_left.push_back(i);
  for (int j = 0; j < instance.n_right; ++j)
    if (!free_right[j]) record.covered_right.push_back(j);

  // Revenue in its covered-vertex form; the edge-sum form is the same
  // multiset of addends. Surplus is defined as the exact complement so the
  // welfare decomposition holds bit-for-bit.
  double sum_l = 0.0, sum_r = 0.0;
  for (int i : record.covered_left) sum_l += prices.l[i];
  for (int j : record.covered_right) sum_r += prices.r[j];
  record.revenue = sum_l + sum_r;
  record.surplus = record.welfare - record.revenue;
  return record;
}

std::vector<TaggedOrder> expand_orders(const MarketInstance& instance,
                                       const std::string& spec, std::uint64_t seed) {
  const int T = instance.edge_count();
  std::vector<TaggedOrder> out;

  std::vector<std::string> tokens;
  std::string current;
  for (char c : spec) {
    if (c == ',') {
      if (!current.empty()) tokens.push_back(current);
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(current);
  if (tokens.empty()) throw ValidationError("order spec is empty");

  std::uint64_t random_counter = 0;
  for (const std::string& token : tokens) {
    if (token == "batch-lb") {
      out.push_back({"batch-lb", identity_order(T)});
    } else if (token == "ascending-mean" || token == "descending-mean") {
      const bool descending = token == "descending-mean";
      std::vector<std::pair<double, int>> keyed;
      keyed.reserve(T);
      for (const EdgeSpec& e : instance.edges)
        keyed.push_back({dist_mean(e.dist), e.edge_id});
      std::sort(keyed.begin(), keyed.end(),
                [descending](const auto& a, const auto& b) {
                  if (a.first != b.first)
                    return descending ? a.first > b.first : a.first < b.first;
                  return a.second < b.second;  // ties ascending by id
                });
      ArrivalOrder order(T);
      for (int t = 0; t < T; ++t) order[t] = keyed[t].second;
      out.push_back({token, std::move(order)});
    } else if (token == "random" || token.rfind("random:", 0) == 0) {
      std::uint64_t k = 1;
      if (token.size() > 7) {
        try {
          k = std::stoull(token.substr(7));
        } catch (const std::exception&) {
          throw ValidationError("bad order token: " + token);
        }
      }
      for (std::uint64_t rep = 0; rep < k; ++rep, ++random_counter) {
        SplitMix64 rng(derive_seed(seed, kStreamOrder, random_counter));
        ArrivalOrder order = identity_order(T);
        for (int t = T - 1; t > 0; --t) {
          const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(t) + 1));
          std::swap(order[t], order[j]);
        }
        out.push_back({"random-" + std::to_string(random_counter), std::move(order)});
      }
    } else if (token == "exhaustive") {
      if (T > kExhaustiveOrderEdgeLimit)
        throw LimitError("exhaustive orders need at most " +
                         std::to_string(kExhaustiveOrderEdgeLimit) + " edges, have " +
                         std::to_string(T));
      ArrivalOrder order = identity_order(T);
      std::uint64_t index = 0;
      do {
        out.push_back({"perm-" + std::to_string(index++), order});
      } while (std::next_permutation(order.begin(), order.end()));
    } else {
      throw ValidationError("unknown order token: " + token);
    }
  }
  return out;
}

namespace {

struct TrialOutcome {
  double opt = 0.0;
  std::vector<std::array<double, 3>> per_order;  // welfare, revenue, surplus
};

}  // namespace

SimulationSet simulate(const MarketInstance& instance, const PriceVector& prices,
                       const std::vector<TaggedOrder>& orders, std::uint64_t trials,
                       std::uint64_t seed, int threads) {
  require_valid(instance);
  check_policy_inputs(instance, prices);
  if (trials == 0) throw ValidationError("simulate: trials must be >= 1");
  if (orders.empty()) throw ValidationError("simulate: need at least one order");
  for (const TaggedOrder& tagged : orders)
    if (!is_permutation(tagged.order, instance.edge_count()))
      throw ValidationError("order '" + tagged.tag + "' is not a permutation");

  const std::size_t k = orders.size();
  std::vector<double> welfare_sum(k, 0.0), welfare_sq(k, 0.0);
  std::vector<double> revenue_sum(k, 0.0), surplus_sum(k, 0.0);
  double opt_sum = 0.0, opt_sq = 0.0;

  parallel_map_ordered<TrialOutcome>(
      trials, threads,
      [&](std::uint64_t t) {
        const ValuationProfile profile = sample_profile(instance, derive_seed(seed, t));
        TrialOutcome outcome;
        outcome.opt = max_weight_value(instance, profile);
        outcome.per_order.reserve(k);
        for (const TaggedOrder& tagged : orders) {
          const PolicyRunRecord run = run_vadd(instance, prices, tagged.order, profile);
          outcome.per_order.push_back({run.welfare, run.revenue, run.surplus});
        }
        return outcome;
      },
      [&](std::uint64_t, TrialOutcome&& outcome) {
        opt_sum += outcome.opt;
        opt_sq += outcome.opt * outcome.opt;
        for (std::size_t o = 0; o < k; ++o) {
          const auto& [welfare, revenue, surplus] = outcome.per_order[o];
          welfare_sum[o] += welfare;
          welfare_sq[o] += welfare * welfare;
          revenue_sum[o] += revenue;
          surplus_sum[o] += surplus;
        }
      });

  const double T = static_cast<double>(trials);
  auto stderr_of = [&](double sum, double sq) {
    if (trials < 2) return 0.0;
    const double var = std::max(0.0, (sq - sum * sum / T) / (T - 1.0));
    return std::sqrt(var / T);
  };

  SimulationSet set;
  set.reports.reserve(k);
  for (std::size_t o = 0; o < k; ++o) {
    SimulationReport report;
    report.order_tag = orders[o].tag;
    report.trials = trials;
    report.mean_welfare = welfare_sum[o] / T;
    report.stderr_welfare = stderr_of(welfare_sum[o], welfare_sq[o]);
    report.mean_revenue = revenue_sum[o] / T;
    report.mean_surplus = surplus_sum[o] / T;
    report.mean_opt = opt_sum / T;
    report.stderr_opt = stderr_of(opt_sum, opt_sq);
    report.ratio = report.mean_opt / report.mean_welfare;
    set.reports.push_back(std::move(report));
  }
  set.worst_index = 0;
  for (std::size_t o = 1; o < k; ++o)
    if (set.reports[o].mean_welfare < set.reports[set.worst_index].mean_welfare)
      set.worst_index = o;
  return set;
}

ExactPolicyExpectation exact_expected_welfare(const MarketInstance& instance,
                                              const PriceVector& prices,
                                              const ArrivalOrder& order,
                                              std::uint64_t enumeration_limit) {
  require_valid(instance);
  check_policy_inputs(instance, prices);
  if (!is_permutation(order, instance.edge_count()))
    throw ValidationError("order is not a permutation of the edge ids");

  ExactPolicyExpectation expectation;
  ProfileEnumerator profiles(instance, enumeration_limit);
  do {
    const double p = profiles.probability();
    if (p == 0.0) continue;
    const PolicyRunRecord run = run_vadd(instance, prices, order, profiles.values());
    expectation.welfare += p * run.welfare;
    expectation.revenue += p * run.revenue;
    expectation.surplus += p * run.surplus;
    expectation.opt += p * max_weight_value(instance, profiles.values());
  } while (profiles.advance());
  return expectation;
}

}  // namespace vpm
