// moments.hpp - the per-pair contribution matrix M (expected value the
// optimal matching collects between each vertex pair) and selection
// probability matrix Q, computed exactly by support enumeration or by
// seeded Monte Carlo. Their grand total 1'M1 is the prophet benchmark.
#pragma once

#include <cstdint>
#include <optional>

#include "vpm/matrix.hpp"
#include "vpm/model.hpp"

namespace vpm {

inline constexpr std::uint64_t kDefaultEnumerationLimit = 1'000'000;

// Walks the product of all edge supports in lexicographic order (edge 0 is
// the most significant digit). Construction throws LimitError when the
// product of support sizes exceeds `limit`.
class ProfileEnumerator {
 public:
  ProfileEnumerator(const MarketInstance& instance, std::uint64_t limit);

  std::uint64_t count() const { return count_; }
  const ValuationProfile& values() const { return values_; }

  // Probability of the current profile: product of atom probabilities in
  // ascending edge order.
  double probability() const;

  // Steps to the next profile; false once all profiles have been visited.
  bool advance();

 private:
  const MarketInstance* instance_;
  std::vector<std::size_t> digits_;
  ValuationProfile values_;
  std::uint64_t count_;
};

// Returns the product of support sizes, or nullopt on overflow past `cap`.
std::optional<std::uint64_t> support_product(const MarketInstance& instance,
                                             std::uint64_t cap);

struct ContributionMatrices {
  Matrix M;  // n x m expected contribution
  Matrix Q;  // n x m selection probability
  std::optional<Matrix> stderr_M;  // Monte Carlo only
  std::optional<Matrix> stderr_Q;
  std::uint64_t trials = 0;  // 0 means exact

  bool exact() const { return trials == 0; }
};

ContributionMatrices compute_moments_exact(
    const MarketInstance& instance,
    std::uint64_t enumeration_limit = kDefaultEnumerationLimit);

// `trials` profiles from sample_profile with trial seeds derived from
// (seed, trial index); accumulation is in trial order regardless of
// `threads`, so output is bit-stable for any worker count.
ContributionMatrices compute_moments_mc(const MarketInstance& instance,
                                        std::uint64_t trials, std::uint64_t seed,
                                        int threads = 1);

// Sum of all entries of M.
double prophet_value(const ContributionMatrices& moments);

}  // namespace vpm
