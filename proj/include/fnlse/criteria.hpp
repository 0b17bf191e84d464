#pragma once

// Goodness-of-prediction measures for recursive one-step-ahead prediction:
// relative errors (TE/RE, in percent), Braun statistics (TBS/RBS, raw
// ratios) and residual variances.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fnlse/estimators.hpp"
#include "fnlse/jm.hpp"

namespace fnlse {

/// sum_{j<upto} |x_j - m_j| / x_j * 100 over the first upto-1 observations.
double te_segment(std::span<const double> x, std::size_t upto,
                  std::span<const double> fitted_mtbf);

/// |x - predicted| / x * 100.
double re_step(double x, double predicted);

/// Braun statistic over i = s..n (1-based s, 1 <= s <= n-2). The mean in the
/// denominator is taken over the whole sequence. Throws when the observations
/// are all equal (zero denominator); the pipeline records NaN instead.
double braun(std::span<const double> observed, std::span<const double> predicted,
             std::size_t s);

/// Braun statistic of a fitted training prefix x_1..x_{i-1}, correction
/// (i-2)/(i-3). Needs i >= 4.
double tbs_segment(std::span<const double> prefix,
                   std::span<const double> fitted_mtbf);

/// Braun statistic of x_1..x_i where the last fitted value is the one-step
/// prediction; correction (i-1)/(i-2).
double rbs_step(std::span<const double> prefix_incl,
                std::span<const double> fitted_mtbf);

struct StepRecord {
  std::size_t step_index = 0;  // i: fitted on x_1..x_{i-1}, predicts x_i
  JmParams segment_params{1.0, 1.0};
  double predicted_mtbf = 0.0;  // raw 1/(phi (N-i+1)), even when N-hat <= i-1
  double te = 0.0;
  double re = 0.0;
  double tbs = 0.0;
  double rbs = 0.0;
  bool fallback_used = false;  // segment did not converge (limit model or scan)
  int iterations = 0;
};

struct CriterionSummary {
  double te_total = 0.0;
  double re_total = 0.0;
  double tbs_total = 0.0;
  double rbs_total = 0.0;
  std::size_t n = 0;
};

/// Averages of the per-step criteria with divisor n - 3. Throws
/// InvalidArgument for n < 4.
CriterionSummary summarize(std::span<const StepRecord> records, std::size_t n);

struct VarianceProfile {
  std::size_t segment_length = 0;
  double sample_variance = 0.0;
  std::vector<std::pair<EstimatorKind, double>> residual_variance_by_estimator;

  /// Throws IndexError when `kind` is absent.
  double residual_variance(const EstimatorKind& kind) const;
};

/// Population variance of x_1..x_m and (1/m) sum (x_i - fit_i)^2 for each
/// supplied fitted series (each of length m).
VarianceProfile variance_profile(
    std::span<const double> x, std::size_t m,
    std::span<const std::pair<EstimatorKind, std::vector<double>>> fits);

}  // namespace fnlse
