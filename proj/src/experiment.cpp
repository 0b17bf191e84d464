#include "fnlse/experiment.hpp"

namespace fnlse {

ReferenceValue DatasetExperiment::reproduced(Criterion c, TableRow row) const {
  auto pick = [c](const PredictionRun& r) {
    return c == Criterion::RE ? r.summary.re_total : r.summary.rbs_total;
  };
  switch (row) {
    case TableRow::MLE: return {pick(mle), std::nullopt};
    case TableRow::LSE: return {pick(lse()), std::nullopt};
    case TableRow::LogLSE: return {pick(loglse), std::nullopt};
    case TableRow::PowLseOpt: {
      double a = c == Criterion::RE ? opt_te.alpha : opt_tbs.alpha;
      return {pick(sweep.run_for(a)), a};
    }
    case TableRow::PowLseBest: {
      const AlphaChoice& b = c == Criterion::RE ? best_re : best_rbs;
      return {b.value, b.alpha};
    }
  }
  return {0, std::nullopt};
}

DatasetExperiment run_experiment(const FailureDataset& data, const AlphaGrid& grid,
                                 const SolverConfig& cfg, unsigned threads) {
  PredictionRun mle = run_recursive(data, EstimatorKind::mle(), cfg);
  PredictionRun loglse = run_recursive(data, EstimatorKind::loglse(), cfg);
  SweepResult sweep = sweep_alpha(data, grid, cfg, threads);
  AlphaChoice opt_te{sweep.alpha_opt_te(), sweep.run_opt_te().summary.te_total};
  AlphaChoice opt_tbs{sweep.alpha_opt_tbs(), sweep.run_opt_tbs().summary.tbs_total};
  AlphaChoice best_re = best_alpha_by_re(sweep);
  AlphaChoice best_rbs = best_alpha_by_rbs(sweep);
  return DatasetExperiment{data, std::move(mle), std::move(loglse), std::move(sweep),
                           opt_te, opt_tbs, best_re, best_rbs};
}

}  // namespace fnlse
