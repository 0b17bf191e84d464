#pragma once

// Everything needed for one dataset's row block in the RE and Braun tables.

#include "fnlse/datasets.hpp"
#include "fnlse/reference_tables.hpp"
#include "fnlse/sweep.hpp"

namespace fnlse {

struct DatasetExperiment {
  FailureDataset data;
  PredictionRun mle;
  PredictionRun loglse;
  SweepResult sweep;  // powLSE over the grid; alpha = 1 is the LSE row
  AlphaChoice opt_te;    // argmin TE  -> "powLSE opt" for RE
  AlphaChoice opt_tbs;   // argmin TBS -> "powLSE opt" for Braun
  AlphaChoice best_re;
  AlphaChoice best_rbs;

  /// LSE row, taken from the alpha = 1 sweep run (throws if 1 is off-grid).
  const PredictionRun& lse() const { return sweep.run_for(1.0); }

  /// Reproduced value and selected alpha for a table cell.
  ReferenceValue reproduced(Criterion c, TableRow row) const;
};

DatasetExperiment run_experiment(const FailureDataset& data,
                                 const AlphaGrid& grid = AlphaGrid::quarter_steps(),
                                 const SolverConfig& cfg = prediction_config(),
                                 unsigned threads = 1);

}  // namespace fnlse
