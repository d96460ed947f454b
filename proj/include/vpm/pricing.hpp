// pricing.hpp - vertex prices from the semi-linear fixed-point system
//
//   l_i = sum_j [M_ij - Q_ij (l_i + r_j)]+        for every left vertex
//   r_j = sum_i [M_ij - Q_ij (l_i + r_j)]+        for every right vertex
//
// solved by the halving update: whichever side currently carries the larger
// L1 residual subtracts half of its residual vector. The combined residual
// shrinks by at least 3/4 per iteration, which also yields the certificate
// 3 * sum(A+) + residual >= prophet value.
#pragma once

#include <cstdint>

#include "vpm/matrix.hpp"
#include "vpm/moments.hpp"

namespace vpm {

struct PriceVector {
  std::vector<double> l;  // left thresholds, non-negative
  std::vector<double> r;  // right thresholds, non-negative
};

struct ResidualPair {
  std::vector<double> delta_l;
  std::vector<double> delta_r;
  double l1_combined = 0.0;  // ||delta_l||_1 + ||delta_r||_1 as accumulated
};

// Entrywise positive part of M - Q .* (l_i + r_j).
struct SlackMatrix {
  Matrix a_plus;
};

struct CertificateReport {
  double s = 0.0;    // sum of slack entries, 1' A+ 1
  double opt = 0.0;  // prophet value, sum of M
  double gap = 0.0;  // 3 s + residual - opt; non-negative up to rounding
  double fixed_point_defect_l = 0.0;  // |sum(l) - s|
  double fixed_point_defect_r = 0.0;  // |sum(r) - s|
};

struct PriceSolution {
  PriceVector prices;
  std::uint64_t iterations = 0;
  double final_residual = 0.0;
  std::vector<double> trace;  // combined L1 residual, initial value first
  CertificateReport certificate;
  bool q_rescaled = false;  // true when noisy Q rows/columns were renormalized
};

ResidualPair residuals(const PriceVector& prices, const ContributionMatrices& moments);

SlackMatrix slack_matrix(const PriceVector& prices, const ContributionMatrices& moments);

CertificateReport certificate(const PriceVector& prices,
                              const ContributionMatrices& moments,
                              const ResidualPair& residual);

// Relative default tolerance: 1e-9 * max(1, sum of M).
double default_eps(const ContributionMatrices& moments);

// Runs the halving iteration from l = r = 0 until the combined L1 residual
// is at most eps. Rows/columns of an estimated Q whose sums exceed 1 are
// rescaled to sum exactly 1 first (Monte Carlo noise would otherwise void
// the contraction bound); the returned solution records when that happened.
// Throws ConvergenceError if the iteration safety cap is exceeded.
PriceSolution solve_prices(const ContributionMatrices& moments, double eps);

}  // namespace vpm
