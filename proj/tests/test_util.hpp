// test_util.hpp - tiny builders shared by the unit suites.
#pragma once

#include <initializer_list>
#include <vector>

#include "vpm/model.hpp"

namespace vpm_test {

inline vpm::DiscreteDistribution point(double value) { return {{value}, {1.0}}; }

inline vpm::DiscreteDistribution dist(std::initializer_list<double> values,
                                      std::initializer_list<double> probs) {
  return {std::vector<double>(values), std::vector<double>(probs)};
}

inline vpm::DiscreteDistribution bernoulli(double value, double p) {
  return {{0.0, value}, {1.0 - p, p}};
}

struct EdgeDef {
  int left;
  int right;
  vpm::DiscreteDistribution dist;
};

inline vpm::MarketInstance make_instance(int n_left, int n_right,
                                         std::vector<EdgeDef> edges) {
  vpm::MarketInstance instance;
  instance.n_left = n_left;
  instance.n_right = n_right;
  for (std::size_t k = 0; k < edges.size(); ++k)
    instance.edges.push_back({static_cast<int>(k), edges[k].left, edges[k].right,
                              std::move(edges[k].dist)});
  return instance;
}

inline vpm::MarketInstance single_edge(vpm::DiscreteDistribution d) {
  return make_instance(1, 1, {{0, 0, std::move(d)}});
}

}  // namespace vpm_test
