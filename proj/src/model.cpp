#include "vpm/model.hpp"

#include <cmath>
#include <sstream>
#include <unordered_set>

#include "vpm/errors.hpp"
#include "vpm/rng.hpp"

namespace vpm {

namespace {

std::string fmt_edge(int edge_id) {
  return "edge " + std::to_string(edge_id);
}

void check_distribution(const DiscreteDistribution& dist, int edge_id,
                        std::vector<Violation>& out) {
  if (dist.values.empty()) {
    out.push_back({"empty_support", fmt_edge(edge_id) + ": support is empty", edge_id});
    return;
  }
  if (dist.values.size() != dist.probs.size()) {
    out.push_back({"shape_mismatch",
                   fmt_edge(edge_id) + ": values and probs differ in length", edge_id});
    return;
  }
  double prob_sum = 0.0;
  for (std::size_t k = 0; k < dist.values.size(); ++k) {
    const double v = dist.values[k];
    const double p = dist.probs[k];
    if (!std::isfinite(v) || v < 0.0) {
      out.push_back({"negative_value",
                     fmt_edge(edge_id) + ": value " + std::to_string(v) +
                         " is negative or non-finite",
                     edge_id});
    }
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      out.push_back({"bad_prob",
                     fmt_edge(edge_id) + ": prob " + std::to_string(p) +
                         " outside [0,1]",
                     edge_id});
    }
    prob_sum += p;
  }
  if (std::abs(prob_sum - 1.0) > kProbSumTolerance) {
    std::ostringstream msg;
    msg << fmt_edge(edge_id) << ": probs sum " << prob_sum << " != 1";
    out.push_back({"prob_sum", msg.str(), edge_id});
  }
  for (std::size_t a = 0; a < dist.values.size(); ++a)
    for (std::size_t b = a + 1; b < dist.values.size(); ++b)
      if (dist.values[a] == dist.values[b]) {
        out.push_back({"duplicate_value",
                       fmt_edge(edge_id) + ": support value " +
                           std::to_string(dist.values[a]) + " repeated",
                       edge_id});
        return;
      }
}

}  // namespace

std::vector<Violation> validate_instance(const MarketInstance& instance) {
  std::vector<Violation> out;
  if (instance.n_left <= 0)
    out.push_back({"bad_shape", "n_left must be positive", -1});
  if (instance.n_right <= 0)
    out.push_back({"bad_shape", "n_right must be positive", -1});

  for (std::size_t idx = 0; idx < instance.edges.size(); ++idx) {
    const EdgeSpec& e = instance.edges[idx];
    if (e.edge_id != static_cast<int>(idx)) {
      out.push_back({"duplicate_edge_id",
                     fmt_edge(e.edge_id) + ": id does not equal list position " +
                         std::to_string(idx),
                     e.edge_id});
    }
    if (e.left < 0 || e.left >= instance.n_left || e.right < 0 ||
        e.right >= instance.n_right) {
      out.push_back({"endpoint_out_of_range",
                     fmt_edge(e.edge_id) + ": endpoints (" + std::to_string(e.left) +
                         "," + std::to_string(e.right) + ") out of range",
                     e.edge_id});
    }
    check_distribution(e.dist, e.edge_id, out);
  }
  return out;
}

void require_valid(const MarketInstance& instance) {
  const std::vector<Violation> violations = validate_instance(instance);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid instance:";
  const std::size_t shown = std::min<std::size_t>(violations.size(), 3);
  for (std::size_t i = 0; i < shown; ++i) msg << " [" << violations[i].message << "]";
  if (violations.size() > shown)
    msg << " (+" << violations.size() - shown << " more)";
  throw ValidationError(msg.str());
}

double sample_value(const DiscreteDistribution& dist, std::uint64_t stream_seed) {
  const double u = to_unit(mix64(stream_seed));
  double cum = 0.0;
  for (std::size_t k = 0; k < dist.values.size(); ++k) {
    cum += dist.probs[k];
    if (u < cum) return dist.values[k];
  }
  return dist.values.back();
}

ValuationProfile sample_profile(const MarketInstance& instance,
                                std::uint64_t trial_seed) {
  ValuationProfile profile(instance.edges.size(), 0.0);
  for (const EdgeSpec& e : instance.edges)
    profile[e.edge_id] =
        sample_value(e.dist, derive_seed(trial_seed, static_cast<std::uint64_t>(e.edge_id)));
  return profile;
}

double dist_mean(const DiscreteDistribution& dist) {
  double mean = 0.0;
  for (std::size_t k = 0; k < dist.values.size(); ++k)
    mean += dist.values[k] * dist.probs[k];
  return mean;
}

double pair_value_ceiling(const MarketInstance& instance, int left, int right) {
  double ceiling = 0.0;
  for (const EdgeSpec& e : instance.edges)
    if (e.left == left && e.right == right)
      for (double v : e.dist.values) ceiling = std::max(ceiling, v);
  return ceiling;
}

bool profile_in_support(const MarketInstance& instance,
                        const ValuationProfile& profile) {
  if (profile.size() != instance.edges.size()) return false;
  for (const EdgeSpec& e : instance.edges) {
    bool found = false;
    for (double v : e.dist.values)
      if (v == profile[e.edge_id]) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

bool is_permutation(const ArrivalOrder& order, int edge_count) {
  if (static_cast<int>(order.size()) != edge_count) return false;
  std::vector<bool> seen(edge_count, false);
  for (int id : order) {
    if (id < 0 || id >= edge_count || seen[id]) return false;
    seen[id] = true;
  }
  return true;
}

ArrivalOrder identity_order(int edge_count) {
  ArrivalOrder order(edge_count);
  for (int t = 0; t < edge_count; ++t) order[t] = t;
  return order;
}

}  // namespace vpm
