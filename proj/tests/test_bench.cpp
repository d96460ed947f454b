#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "test_util.hpp"
#include "vpm/bench.hpp"
#include "vpm/errors.hpp"
#include "vpm/json_io.hpp"
#include "vpm/matching.hpp"
#include "vpm/model.hpp"
#include "vpm/moments.hpp"
#include "vpm/rng.hpp"

using namespace vpm;
using namespace vpm_test;

TEST_CASE("smallest family member: 3+3 vertices, five edges") {
  const LowerBoundInstance lb = gen_lower_bound(1);
  CHECK(lb.instance.n_left == 3);
  CHECK(lb.instance.n_right == 3);
  REQUIRE(lb.instance.edge_count() == 5);
  CHECK(validate_instance(lb.instance).empty());

  // Two deterministic 1/2 edges.
  for (int id : {0, 1}) {
    CHECK(lb.instance.edges[id].dist.values == std::vector<double>{0.5});
    CHECK(lb.instance.edges[id].dist.probs == std::vector<double>{1.0});
  }
  // Two 3/4-with-probability-1/2 edges.
  for (int id : {2, 3}) {
    CHECK(lb.instance.edges[id].dist.values == std::vector<double>{0.0, 0.75});
    CHECK(lb.instance.edges[id].dist.probs == std::vector<double>{0.5, 0.5});
  }
  // One rare edge; at n = 1 it fires with probability 1/n^2 = 1.
  CHECK(lb.instance.edges[4].dist.values == std::vector<double>{0.0, 1.0});
  CHECK(lb.instance.edges[4].dist.probs == std::vector<double>{0.0, 1.0});

  CHECK(lb.order == identity_order(5));
}

TEST_CASE("edge counts are 2n + 2n + n^2") {
  CHECK(gen_lower_bound(2).instance.edge_count() == 12);
  CHECK(gen_lower_bound(5).instance.edge_count() == 10 + 10 + 25);
}

TEST_CASE("structure: per-vertex incidences of the three batches") {
  const int n = 4;
  const LowerBoundInstance lb = gen_lower_bound(n);
  const MarketInstance& inst = lb.instance;
  CHECK(inst.n_left == 3 * n);

  for (int i = 0; i < n; ++i) {
    int direct = 0, hedge = 0, block = 0;
    for (const EdgeSpec& e : inst.edges) {
      if (e.left != i) continue;
      if (e.right == i + n) {
        ++direct;
        CHECK(e.dist.values == std::vector<double>{0.5});
      } else if (e.right == i + 2 * n) {
        ++hedge;
        CHECK(e.dist.values == std::vector<double>{0.0, 0.75});
      } else {
        ++block;
        CHECK(e.right < n);
        CHECK(e.dist.values == std::vector<double>{0.0, static_cast<double>(n)});
        CHECK(e.dist.probs[1] == 1.0 / (n * n));
      }
    }
    CHECK(direct == 1);
    CHECK(hedge == 1);
    CHECK(block == n);
  }
  // Mirrored structure on the right block vertices.
  for (int j = 0; j < n; ++j) {
    int direct = 0, hedge = 0, block = 0;
    for (const EdgeSpec& e : inst.edges) {
      if (e.right != j) continue;
      if (e.left == j + n)
        ++direct;
      else if (e.left == j + 2 * n)
        ++hedge;
      else {
        CHECK(e.left < n);
        ++block;
      }
    }
    CHECK(direct == 1);
    CHECK(hedge == 1);
    CHECK(block == n);
  }

  // Batch order: ids ascending equals E1, E2, E3 blocks.
  for (int id = 0; id < 2 * n; ++id)
    CHECK(inst.edges[id].dist.values.back() == 0.5);
  for (int id = 2 * n; id < 4 * n; ++id)
    CHECK(inst.edges[id].dist.values.back() == 0.75);
  for (int id = 4 * n; id < 4 * n + n * n; ++id)
    CHECK(inst.edges[id].dist.values.back() == static_cast<double>(n));
}

TEST_CASE("gen_lower_bound rejects n < 1") {
  CHECK_THROWS_AS(gen_lower_bound(0), ValidationError);
  CHECK_THROWS_AS(gen_lower_bound(-3), ValidationError);
}

TEST_CASE("gen_random is deterministic and always valid") {
  const MarketInstance a = gen_random(4, 5, 12, 3, 1.0, 2024);
  const MarketInstance b = gen_random(4, 5, 12, 3, 1.0, 2024);
  CHECK(instance_to_json(a) == instance_to_json(b));
  const MarketInstance c = gen_random(4, 5, 12, 3, 1.0, 2025);
  CHECK(instance_to_json(a) != instance_to_json(c));

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const MarketInstance inst =
        gen_random(2 + seed % 5, 2 + seed % 4, 1 + seed % 15, 1 + seed % 8, 1.0, seed);
    CHECK(validate_instance(inst).empty());
  }
}

TEST_CASE("gen_random keeps probabilities on the dyadic grid") {
  const MarketInstance inst = gen_random(3, 3, 20, 4, 1.0, 7);
  for (const EdgeSpec& e : inst.edges) {
    double sum = 0.0;
    for (double p : e.dist.probs) {
      CHECK(p * 8.0 == static_cast<double>(static_cast<int>(p * 8.0)));
      CHECK(p > 0.0);
      sum += p;
    }
    CHECK(sum == 1.0);  // exact: eighths add up without rounding
  }
}

TEST_CASE("small generated supports stay enumerable") {
  const MarketInstance inst = gen_random(3, 3, 6, 2, 1.0, 11);
  const auto count = support_product(inst, 1000000);
  REQUIRE(count.has_value());
  CHECK(*count <= 64);
}

TEST_CASE("gen_random parameter validation") {
  CHECK_THROWS_AS(gen_random(0, 3, 5, 2, 1.0, 0), ValidationError);
  CHECK_THROWS_AS(gen_random(3, 3, 0, 2, 1.0, 0), ValidationError);
  CHECK_THROWS_AS(gen_random(3, 3, 5, 9, 1.0, 0), ValidationError);
  CHECK_THROWS_AS(gen_random(3, 3, 5, 2, 0.0, 0), ValidationError);
}

TEST_CASE("medium family member clears its finite-size bound") {
  // n = 20: block term 20*(1 - 38/400) = 18.1, middle terms
  // 2 * (5/8)*20*(1 - 1/20) = 23.75; total 41.85.
  const LowerBoundInstance lb = gen_lower_bound(20);
  const std::uint64_t trials = 4000;
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double opt = vpm::max_weight_value(
        lb.instance, sample_profile(lb.instance, derive_seed(31, t)));
    sum += opt;
    sum_sq += opt * opt;
  }
  const double mean = sum / trials;
  const double sigma =
      std::sqrt(std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1.0)) / trials);
  CHECK(mean >= 41.85 - 3.0 * sigma);
}
