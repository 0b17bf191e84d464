#pragma once

// Recursive one-step-ahead prediction and the power-index search.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fnlse/criteria.hpp"
#include "fnlse/estimators.hpp"
#include "fnlse/jm.hpp"
#include "fnlse/solver.hpp"

namespace fnlse {

/// Solver settings used for recursive prediction: the defaults with
/// RootPolicy::NewtonFromStart.
SolverConfig prediction_config();

struct PredictionRun {
  std::string dataset;
  EstimatorKind estimator = EstimatorKind::mle();
  std::vector<StepRecord> records;  // i = 4..n
  CriterionSummary summary;
  std::size_t fallback_count = 0;
};

/// For i = 4..n fit on x_1..x_{i-1} and predict x_i. Segments without a
/// finite estimate use the N -> infinity limit model and are flagged
/// fallback_used. Throws InvalidArgument for n < 4.
PredictionRun run_recursive(const FailureDataset& data,
                            const EstimatorKind& estimator,
                            const SolverConfig& cfg = prediction_config());

class AlphaGrid {
 public:
  /// Strictly increasing, non-empty, no zero entry (InvalidArgument).
  explicit AlphaGrid(std::vector<double> values);

  /// -2 .. 2 in steps of 1/4, zero excluded.
  static AlphaGrid quarter_steps();

  /// Comma-separated list; accepts fractions such as "-5/4".
  static AlphaGrid parse(const std::string& spec);

  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

struct AlphaChoice {
  double alpha;
  double value;
};

class SweepResult {
 public:
  SweepResult(std::vector<std::pair<double, PredictionRun>> runs);

  const std::vector<std::pair<double, PredictionRun>>& runs() const noexcept {
    return runs_;
  }
  /// Throws IndexError if alpha is not on the grid.
  const PredictionRun& run_for(double alpha) const;

  double alpha_opt_te() const noexcept { return alpha_opt_te_; }
  double alpha_opt_tbs() const noexcept { return alpha_opt_tbs_; }
  const PredictionRun& run_opt_te() const { return run_for(alpha_opt_te_); }
  const PredictionRun& run_opt_tbs() const { return run_for(alpha_opt_tbs_); }

 private:
  std::vector<std::pair<double, PredictionRun>> runs_;
  double alpha_opt_te_;
  double alpha_opt_tbs_;
};

/// Argmin over the grid of `criterion`; ties go to the alpha closest to 1,
/// then to the smaller |alpha|.
template <typename Criterion>
AlphaChoice argmin_alpha(const std::vector<std::pair<double, PredictionRun>>& runs,
                         Criterion criterion);

/// One PredictionRun per grid alpha with PowLSE(alpha). Grid points are
/// independent; `threads` > 1 spreads them over worker threads with results
/// identical to the sequential order.
SweepResult sweep_alpha(const FailureDataset& data, const AlphaGrid& grid,
                        const SolverConfig& cfg = prediction_config(),
                        unsigned threads = 1);

/// Grid alpha with the smallest predictive RE.
AlphaChoice best_alpha_by_re(const SweepResult& sweep);
/// Grid alpha with the smallest predictive RBS.
AlphaChoice best_alpha_by_rbs(const SweepResult& sweep);

// -- implementation ---------------------------------------------------------

bool alpha_preferred(double a, double b);

template <typename Criterion>
AlphaChoice argmin_alpha(const std::vector<std::pair<double, PredictionRun>>& runs,
                         Criterion criterion) {
  AlphaChoice best{runs.front().first, criterion(runs.front().second)};
  for (std::size_t k = 1; k < runs.size(); ++k) {
    const double v = criterion(runs[k].second);
    if (v < best.value || (v == best.value && alpha_preferred(runs[k].first, best.alpha))) {
      best = {runs[k].first, v};
    }
  }
  return best;
}

}  // namespace fnlse
