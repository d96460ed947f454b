#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vpm/bench.hpp"
#include "vpm/errors.hpp"
#include "vpm/matching.hpp"
#include "vpm/moments.hpp"
#include "vpm/oracle.hpp"
#include "vpm/policy.hpp"
#include "vpm/pricing.hpp"
#include "vpm/rng.hpp"

using namespace vpm;
using namespace vpm_test;

TEST_CASE("single deterministic edge: online takes it") {
  const MarketInstance inst = single_edge(point(2.5));
  CHECK(optimal_online_value(inst, {0}) == 2.5);
  CHECK(exact_opt_value(inst) == 2.5);
}

TEST_CASE("single Bernoulli edge: accept iff positive") {
  const MarketInstance inst = single_edge(bernoulli(1.0, 0.5));
  CHECK(optimal_online_value(inst, {0}) == 0.5);
  CHECK(exact_opt_value(inst) == 0.5);
}

TEST_CASE("two sequential parallel Bernoulli edges: wait beats greed") {
  // Accept the first edge only when it fires: 0.5 * 1 + 0.5 * 0.5 = 0.75.
  const MarketInstance inst =
      make_instance(1, 1, {{0, 0, bernoulli(1.0, 0.5)}, {0, 0, bernoulli(1.0, 0.5)}});
  CHECK(optimal_online_value(inst, {0, 1}) == 0.75);
  CHECK(exact_opt_value(inst) == 0.75);
}

TEST_CASE("exact_opt_value agrees with the moments route") {
  for (int trial = 0; trial < 50; ++trial) {
    const MarketInstance inst =
        gen_random(2 + trial % 3, 2 + (trial / 2) % 3, 3 + trial % 5, 2, 1.0,
                   derive_seed(2100, trial));
    const double via_enumeration = exact_opt_value(inst);
    const double via_moments = prophet_value(compute_moments_exact(inst));
    CHECK(via_moments == doctest::Approx(via_enumeration).epsilon(1e-9));
  }
}

TEST_CASE("smallest separation instance, fully by hand") {
  // n = 1: left/right vertices {0,1,2}; edges
  //   0: (0,1) value 1/2      1: (1,0) value 1/2
  //   2: (0,2) 3/4 w.p. 1/2   3: (2,0) 3/4 w.p. 1/2
  //   4: (0,0) value 1 w.p. 1
  // Enumerating the four equiprobable (e2, e3) outcomes gives offline optima
  // 1, 1.25, 1.25, 1.5, so E[opt] = 1.25.
  const LowerBoundInstance lb = gen_lower_bound(1);
  CHECK(exact_opt_value(lb.instance) == doctest::Approx(1.25).epsilon(1e-12));

  double by_hand = 0.0;
  ProfileEnumerator profiles(lb.instance, 1000);
  do {
    const double p = profiles.probability();
    if (p == 0.0) continue;
    by_hand += p * max_weight_value(lb.instance, profiles.values());
  } while (profiles.advance());
  CHECK(by_hand == doctest::Approx(1.25).epsilon(1e-12));

  const double dp = optimal_online_value(lb.instance, lb.order);
  CHECK(dp <= 1.25 + 1e-9);
  CHECK(dp > 0.0);
}

TEST_CASE("sandwich on random tiny instances") {
  for (int trial = 0; trial < 50; ++trial) {
    const MarketInstance inst =
        gen_random(2 + trial % 3, 2 + (trial / 3) % 3, 3 + trial % 6, 2, 1.0,
                   derive_seed(2200, trial));
    const auto moments = compute_moments_exact(inst);
    const PriceSolution solved = solve_prices(moments, default_eps(moments));
    const auto orders = expand_orders(inst, "random:2", derive_seed(2201, trial));
    const double opt = exact_opt_value(inst);
    for (const TaggedOrder& tagged : orders) {
      const double policy =
          exact_expected_welfare(inst, solved.prices, tagged.order).welfare;
      const double adaptive = optimal_online_value(inst, tagged.order);
      CHECK(policy <= adaptive + 1e-9);
      CHECK(adaptive <= opt + 1e-9);
      CHECK(adaptive >= opt / 3.0 - 1e-9);
    }
  }
}

TEST_CASE("dp value is stable across repeated evaluation") {
  const LowerBoundInstance lb = gen_lower_bound(2);
  const double first = optimal_online_value(lb.instance, lb.order);
  for (int rep = 0; rep < 3; ++rep)
    CHECK(optimal_online_value(lb.instance, lb.order) == first);

  // Reversing the arrival order changes the problem but stays sandwiched.
  ArrivalOrder reversed = lb.order;
  std::reverse(reversed.begin(), reversed.end());
  const double backwards = optimal_online_value(lb.instance, reversed);
  CHECK(backwards <= exact_opt_value(lb.instance) + 1e-9);
}

TEST_CASE("state-space limits are enforced") {
  const MarketInstance wide = gen_random(8, 8, 4, 2, 1.0, 3);
  CHECK_THROWS_AS(optimal_online_value(wide, identity_order(4)), LimitError);

  std::vector<EdgeDef> many;
  for (int k = 0; k < 65; ++k) many.push_back({k % 3, k % 3, point(1.0)});
  const MarketInstance long_run = make_instance(3, 3, std::move(many));
  CHECK_THROWS_AS(optimal_online_value(long_run, identity_order(65)), LimitError);
}
