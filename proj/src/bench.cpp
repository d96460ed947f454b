#include "vpm/bench.hpp"

#include <algorithm>

#include "vpm/errors.hpp"
#include "vpm/rng.hpp"

namespace vpm {

LowerBoundInstance gen_lower_bound(int n) {
  if (n < 1) throw ValidationError("gen_lower_bound: n must be >= 1");

  LowerBoundInstance out;
  out.instance.n_left = 3 * n;
  out.instance.n_right = 3 * n;

  auto add_edge = [&](int left, int right, DiscreteDistribution dist) {
    EdgeSpec e;
    e.edge_id = out.instance.edge_count();
    e.left = left;
    e.right = right;
    e.dist = std::move(dist);
    out.instance.edges.push_back(std::move(e));
  };

  const DiscreteDistribution low{{0.5}, {1.0}};
  const DiscreteDistribution mid{{0.0, 0.75}, {0.5, 0.5}};
  const double big = static_cast<double>(n);
  const double p_big = 1.0 / (big * big);
  const DiscreteDistribution rare{{0.0, big}, {1.0 - p_big, p_big}};

  for (int i = 0; i < n; ++i) add_edge(i, i + n, low);
  for (int j = 0; j < n; ++j) add_edge(j + n, j, low);
  for (int i = 0; i < n; ++i) add_edge(i, i + 2 * n, mid);
  for (int j = 0; j < n; ++j) add_edge(j + 2 * n, j, mid);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) add_edge(i, j, rare);

  out.order = identity_order(out.instance.edge_count());
  return out;
}

MarketInstance gen_random(int n_left, int n_right, int edge_count, int max_support,
                          double value_scale, std::uint64_t seed) {
  if (n_left < 1 || n_right < 1)
    throw ValidationError("gen_random: vertex counts must be positive");
  if (edge_count < 1) throw ValidationError("gen_random: edges must be >= 1");
  if (max_support < 1 || max_support > 8)
    throw ValidationError("gen_random: max_support must be in [1, 8]");
  if (!(value_scale > 0.0))
    throw ValidationError("gen_random: value_scale must be positive");

  SplitMix64 rng(derive_seed(seed, kStreamGenerator));
  MarketInstance instance;
  instance.n_left = n_left;
  instance.n_right = n_right;

  for (int id = 0; id < edge_count; ++id) {
    EdgeSpec e;
    e.edge_id = id;
    e.left = static_cast<int>(rng.next_below(n_left));
    e.right = static_cast<int>(rng.next_below(n_right));

    const int support = 1 + static_cast<int>(rng.next_below(max_support));
    const bool with_zero = (rng.next() & 1u) != 0;

    std::vector<double> values;
    if (with_zero) values.push_back(0.0);
    std::vector<char> used(17, 0);
    while (static_cast<int>(values.size()) < support) {
      const int k = 1 + static_cast<int>(rng.next_below(16));
      if (used[k]) continue;
      used[k] = 1;
      values.push_back(static_cast<double>(k) / 8.0 * value_scale);
    }
    std::sort(values.begin(), values.end());

    // Probabilities: a random composition of 8/8 into `support` positive
    // eighths, via distinct cut points.
    std::vector<int> cuts = {0, 8};
    {
      std::vector<int> pool = {1, 2, 3, 4, 5, 6, 7};
      for (int need = 0; need < support - 1; ++need) {
        const int pick = static_cast<int>(rng.next_below(pool.size()));
        cuts.push_back(pool[pick]);
        pool.erase(pool.begin() + pick);
      }
      std::sort(cuts.begin(), cuts.end());
    }
    std::vector<double> probs;
    for (std::size_t c = 1; c < cuts.size(); ++c)
      probs.push_back(static_cast<double>(cuts[c] - cuts[c - 1]) / 8.0);

    e.dist.values = std::move(values);
    e.dist.probs = std::move(probs);
    instance.edges.push_back(std::move(e));
  }
  return instance;
}

}  // namespace vpm
