#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

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

namespace {

// Independent expectation of the optimum: direct enumeration, no matrices.
double enumerate_expected_opt(const MarketInstance& inst) {
  double total = 0.0;
  ProfileEnumerator profiles(inst, kDefaultEnumerationLimit);
  do {
    const double p = profiles.probability();
    if (p > 0.0) total += p * max_weight_value(inst, profiles.values());
  } while (profiles.advance());
  return total;
}

}  // namespace

TEST_CASE("profile enumerator walks the full support product") {
  const MarketInstance inst = make_instance(
      2, 2, {{0, 0, dist({0.0, 1.0}, {0.5, 0.5})}, {1, 1, dist({0.5, 1.5}, {0.25, 0.75})}});
  ProfileEnumerator profiles(inst, 100);
  CHECK(profiles.count() == 4);
  int visited = 0;
  double mass = 0.0;
  do {
    ++visited;
    mass += profiles.probability();
  } while (profiles.advance());
  CHECK(visited == 4);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact: deterministic single edge") {
  const auto m = compute_moments_exact(single_edge(point(1.0)));
  CHECK(m.M(0, 0) == 1.0);
  CHECK(m.Q(0, 0) == 1.0);
  CHECK(m.exact());
  CHECK_FALSE(m.stderr_M.has_value());
}

TEST_CASE("exact: Bernoulli half edge") {
  const auto m = compute_moments_exact(single_edge(bernoulli(1.0, 0.5)));
  CHECK(m.M(0, 0) == 0.5);
  CHECK(m.Q(0, 0) == 0.5);
}

TEST_CASE("exact: two lefts one right, values 2 and 1") {
  const MarketInstance inst =
      make_instance(2, 1, {{0, 0, point(2.0)}, {1, 0, point(1.0)}});
  const auto m = compute_moments_exact(inst);
  CHECK(m.M(0, 0) == 2.0);
  CHECK(m.M(1, 0) == 0.0);
  CHECK(m.Q(0, 0) == 1.0);
  CHECK(m.Q(1, 0) == 0.0);
  CHECK(prophet_value(m) == 2.0);
}

TEST_CASE("prophet value equals directly enumerated E[opt]") {
  for (int trial = 0; trial < 50; ++trial) {
    const MarketInstance inst =
        gen_random(2 + trial % 3, 2 + trial % 4, 3 + trial % 6, 2, 1.0,
                   derive_seed(50, trial));
    const auto m = compute_moments_exact(inst);
    const double direct = enumerate_expected_opt(inst);
    CHECK(prophet_value(m) == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("row and column sums of Q stay within 1") {
  for (int trial = 0; trial < 30; ++trial) {
    const MarketInstance inst =
        gen_random(3, 3, 6 + trial % 5, 2, 1.0, derive_seed(60, trial));
    const auto m = compute_moments_exact(inst);
    for (std::size_t i = 0; i < m.Q.rows(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < m.Q.cols(); ++j) row += m.Q(i, j);
      CHECK(row <= 1.0);
    }
    for (std::size_t j = 0; j < m.Q.cols(); ++j) {
      double col = 0.0;
      for (std::size_t i = 0; i < m.Q.rows(); ++i) col += m.Q(i, j);
      CHECK(col <= 1.0);
    }
  }
}

TEST_CASE("M is bounded by the pair ceiling times Q") {
  for (int trial = 0; trial < 20; ++trial) {
    const MarketInstance inst = gen_random(3, 3, 7, 3, 1.0, derive_seed(70, trial));
    const auto m = compute_moments_exact(inst);
    for (int i = 0; i < inst.n_left; ++i)
      for (int j = 0; j < inst.n_right; ++j) {
        CHECK(m.M(i, j) <= pair_value_ceiling(inst, i, j) * m.Q(i, j) + 1e-12);
        if (m.M(i, j) > 0.0) CHECK(m.Q(i, j) > 0.0);
      }
  }
}

TEST_CASE("enumeration limit raises a size error") {
  std::vector<EdgeDef> edges;
  for (int k = 0; k < 25; ++k) edges.push_back({0, 0, bernoulli(1.0, 0.5)});
  const MarketInstance inst = make_instance(1, 1, std::move(edges));
  CHECK_THROWS_AS(compute_moments_exact(inst, 1000), LimitError);
}

TEST_CASE("mc: deterministic instance matches exact for any trials") {
  const MarketInstance inst =
      make_instance(2, 2, {{0, 0, point(1.5)}, {1, 1, point(0.25)}});
  const auto exact = compute_moments_exact(inst);
  const auto mc = compute_moments_mc(inst, 37, 5, 1);
  CHECK(mc.M(0, 0) == exact.M(0, 0));
  CHECK(mc.M(1, 1) == exact.M(1, 1));
  CHECK(mc.Q(0, 0) == 1.0);
  CHECK(mc.trials == 37);
  CHECK(mc.stderr_M.has_value());
  CHECK((*mc.stderr_M)(0, 0) == 0.0);
}

TEST_CASE("mc: Bernoulli edge estimate within 4 standard errors") {
  const auto mc = compute_moments_mc(single_edge(bernoulli(1.0, 0.5)), 100000, 42, 1);
  CHECK(std::abs(mc.M(0, 0) - 0.5) <= 4.0 * (*mc.stderr_M)(0, 0));
  CHECK(std::abs(mc.Q(0, 0) - 0.5) <= 4.0 * (*mc.stderr_Q)(0, 0));
}

TEST_CASE("mc vs exact on random instances, entrywise 5 sigma") {
  for (int trial = 0; trial < 5; ++trial) {
    const MarketInstance inst = gen_random(3, 3, 6, 2, 1.0, derive_seed(80, trial));
    const auto exact = compute_moments_exact(inst);
    const auto mc = compute_moments_mc(inst, 200000, derive_seed(81, trial), 1);
    for (std::size_t flat = 0; flat < exact.M.data().size(); ++flat) {
      const double band_m = 5.0 * std::max(mc.stderr_M->data()[flat], 1e-6);
      const double band_q = 5.0 * std::max(mc.stderr_Q->data()[flat], 1e-6);
      CHECK(std::abs(mc.M.data()[flat] - exact.M.data()[flat]) <= band_m);
      CHECK(std::abs(mc.Q.data()[flat] - exact.Q.data()[flat]) <= band_q);
    }
  }
}

TEST_CASE("mc: identical output for any thread count") {
  const MarketInstance inst = gen_random(4, 3, 8, 3, 1.0, 99);
  const auto one = compute_moments_mc(inst, 5000, 7, 1);
  const auto two = compute_moments_mc(inst, 5000, 7, 2);
  const auto four = compute_moments_mc(inst, 5000, 7, 4);
  CHECK(moments_to_json(one) == moments_to_json(two));
  CHECK(moments_to_json(one) == moments_to_json(four));
}

TEST_CASE("separation family prophet value grows like 9n/4") {
  // n = 100: finite-size lower-bound pieces give at least
  // 100*(1 - 198/10000) + 2 * (5/8)*100*(1 - 1/100) = 98.02 + 123.75 = 221.77.
  const auto lb = gen_lower_bound(100);
  const std::uint64_t trials = 10000;
  const std::uint64_t seed = 12345;

  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double opt =
        max_weight_value(lb.instance, sample_profile(lb.instance, derive_seed(seed, t)));
    sum += opt;
    sum_sq += opt * opt;
  }
  const double mean = sum / trials;
  const double sigma =
      std::sqrt(std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1.0)) / trials);
  CHECK(mean >= 9.0 / 4.0 * 100.0 - 5.0 - 3.0 * sigma);

  // The matrix estimate aggregates exactly the same per-trial optima.
  const auto mc = compute_moments_mc(lb.instance, trials, seed, 1);
  CHECK(prophet_value(mc) == doctest::Approx(mean).epsilon(1e-9));
}
