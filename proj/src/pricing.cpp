#include "vpm/pricing.hpp"

#include <cmath>
#include <string>

#include "vpm/errors.hpp"

namespace vpm {

namespace {

void check_dimensions(const PriceVector& prices, const ContributionMatrices& moments) {
  if (!moments.M.same_shape(moments.Q))
    throw ValidationError("moments: M and Q shapes differ");
  if (prices.l.size() != moments.M.rows() || prices.r.size() != moments.M.cols())
    throw ValidationError("prices: dimensions do not match moments (" +
                          std::to_string(prices.l.size()) + "," +
                          std::to_string(prices.r.size()) + ") vs (" +
                          std::to_string(moments.M.rows()) + "," +
                          std::to_string(moments.M.cols()) + ")");
}

void check_finite_nonneg(const ContributionMatrices& moments) {
  for (double v : moments.M.data())
    if (!std::isfinite(v) || v < 0.0)
      throw ValidationError("moments: M has a negative or non-finite entry");
  for (double q : moments.Q.data())
    if (!std::isfinite(q) || q < 0.0 || q > 1.0 + 1e-6)
      throw ValidationError("moments: Q has an entry outside [0,1]");
}

// Rescale any row or column of Q whose sum exceeds 1 down to sum exactly 1.
// A column pass after a row pass only shrinks entries, so both families of
// sums end up at most 1. Sub-ulp excess is left alone.
bool clamp_q_sums(Matrix& q) {
  constexpr double kExcessTolerance = 1e-12;
  bool changed = false;
  for (std::size_t i = 0; i < q.rows(); ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < q.cols(); ++j) row_sum += q(i, j);
    if (row_sum > 1.0 + kExcessTolerance) {
      for (std::size_t j = 0; j < q.cols(); ++j) q(i, j) /= row_sum;
      changed = true;
    }
  }
  for (std::size_t j = 0; j < q.cols(); ++j) {
    double col_sum = 0.0;
    for (std::size_t i = 0; i < q.rows(); ++i) col_sum += q(i, j);
    if (col_sum > 1.0 + kExcessTolerance) {
      for (std::size_t i = 0; i < q.rows(); ++i) q(i, j) /= col_sum;
      changed = true;
    }
  }
  return changed;
}

}  // namespace

ResidualPair residuals(const PriceVector& prices, const ContributionMatrices& moments) {
  check_dimensions(prices, moments);
  const std::size_t n = moments.M.rows();
  const std::size_t m = moments.M.cols();

  ResidualPair out;
  out.delta_l.assign(n, 0.0);
  out.delta_r.assign(m, 0.0);

  std::vector<double> row_slack(n, 0.0), col_slack(m, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double slack =
          std::max(0.0, moments.M(i, j) - moments.Q(i, j) * (prices.l[i] + prices.r[j]));
      row_slack[i] += slack;
      col_slack[j] += slack;
    }

  double l1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.delta_l[i] = prices.l[i] - row_slack[i];
    l1 += std::abs(out.delta_l[i]);
  }
  for (std::size_t j = 0; j < m; ++j) {
    out.delta_r[j] = prices.r[j] - col_slack[j];
    l1 += std::abs(out.delta_r[j]);
  }
  out.l1_combined = l1;
  return out;
}

SlackMatrix slack_matrix(const PriceVector& prices, const ContributionMatrices& moments) {
  check_dimensions(prices, moments);
  SlackMatrix out;
  out.a_plus = Matrix(moments.M.rows(), moments.M.cols());
  for (std::size_t i = 0; i < moments.M.rows(); ++i)
    for (std::size_t j = 0; j < moments.M.cols(); ++j)
      out.a_plus(i, j) =
          std::max(0.0, moments.M(i, j) - moments.Q(i, j) * (prices.l[i] + prices.r[j]));
  return out;
}

CertificateReport certificate(const PriceVector& prices,
                              const ContributionMatrices& moments,
                              const ResidualPair& residual) {
  CertificateReport report;
  report.s = slack_matrix(prices, moments).a_plus.sum();
  report.opt = prophet_value(moments);
  report.gap = 3.0 * report.s + residual.l1_combined - report.opt;

  double sum_l = 0.0, sum_r = 0.0;
  for (double x : prices.l) sum_l += x;
  for (double x : prices.r) sum_r += x;
  report.fixed_point_defect_l = std::abs(sum_l - report.s);
  report.fixed_point_defect_r = std::abs(sum_r - report.s);
  return report;
}

double default_eps(const ContributionMatrices& moments) {
  return 1e-9 * std::max(1.0, moments.M.sum());
}

PriceSolution solve_prices(const ContributionMatrices& moments, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw ValidationError("solve_prices: eps must be a positive finite number");
  if (!moments.M.same_shape(moments.Q))
    throw ValidationError("moments: M and Q shapes differ");
  check_finite_nonneg(moments);

  ContributionMatrices work;
  work.M = moments.M;
  work.Q = moments.Q;
  work.trials = moments.trials;

  PriceSolution solution;
  solution.q_rescaled = clamp_q_sums(work.Q);

  const std::size_t n = work.M.rows();
  const std::size_t m = work.M.cols();
  solution.prices.l.assign(n, 0.0);
  solution.prices.r.assign(m, 0.0);

  const double total_m = work.M.sum();
  // The 3/4-contraction bound with generous slack; exceeding it means the
  // inputs break the row/column-sum precondition on Q.
  const double log_ratio = std::log(4.0 / 3.0);
  const std::uint64_t cap = static_cast<std::uint64_t>(
      10.0 * (std::max(0.0, std::log(std::max(1e-300, 2.0 * total_m / eps))) / log_ratio +
              8.0));

  ResidualPair res = residuals(solution.prices, work);
  solution.trace.push_back(res.l1_combined);

  while (res.l1_combined > eps) {
    if (solution.iterations >= cap)
      throw ConvergenceError(
          "solve_prices: residual " + std::to_string(res.l1_combined) +
          " after " + std::to_string(solution.iterations) +
          " iterations; input moments likely violate the Q sum conditions");

    double norm_l = 0.0, norm_r = 0.0;
    for (double d : res.delta_l) norm_l += std::abs(d);
    for (double d : res.delta_r) norm_r += std::abs(d);

    if (norm_l >= norm_r) {
      for (std::size_t i = 0; i < n; ++i)
        solution.prices.l[i] -= 0.5 * res.delta_l[i];
    } else {
      for (std::size_t j = 0; j < m; ++j)
        solution.prices.r[j] -= 0.5 * res.delta_r[j];
    }
    ++solution.iterations;

    res = residuals(solution.prices, work);
    solution.trace.push_back(res.l1_combined);
  }

  solution.final_residual = res.l1_combined;
  solution.certificate = certificate(solution.prices, work, res);
  return solution;
}

}  // namespace vpm
