#include <doctest.h>

#include <cmath>

#include "fnlse/datasets.hpp"
#include "fnlse/errors.hpp"
#include "fnlse/experiment.hpp"
#include "fnlse/sweep.hpp"
#include "oracles.hpp"

using namespace fnlse;

namespace {

std::vector<std::pair<double, double>> step_params(const PredictionRun& r) {
  std::vector<std::pair<double, double>> out;
  for (const auto& s : r.records) out.emplace_back(s.segment_params.N, s.segment_params.phi);
  return out;
}

}  // namespace

TEST_CASE("pipeline totals match an independent recomputation") {
  for (DatasetId id : {DatasetId::NTDS, DatasetId::JDM2, DatasetId::ATT}) {
    auto d = builtin(id);
    for (auto kind : {EstimatorKind::mle(), EstimatorKind::loglse(), EstimatorKind::powlse(-2)}) {
      CAPTURE(kind.label());
      auto run = run_recursive(d, kind);
      REQUIRE(run.records.size() == d.size() - 3);
      auto t = oracle::recompute_totals(d.times(), step_params(run));
      CHECK(run.summary.te_total == doctest::Approx(t.te).epsilon(1e-12));
      CHECK(run.summary.re_total == doctest::Approx(t.re).epsilon(1e-12));
      CHECK(run.summary.tbs_total == doctest::Approx(t.tbs).epsilon(1e-12));
      CHECK(run.summary.rbs_total == doctest::Approx(t.rbs).epsilon(1e-12));
    }
  }
}

TEST_CASE("records line up with the segments") {
  auto d = builtin(DatasetId::JDM2);
  auto run = run_recursive(d, EstimatorKind::mle());
  for (const auto& r : run.records) {
    auto seg = d.times().first(r.step_index - 1);
    auto est = estimate(EstimatorKind::mle(), seg, prediction_config());
    CHECK(r.segment_params == est.params);
    CHECK(r.fallback_used == (est.status != EstimateStatus::Converged));
    if (!r.fallback_used && r.segment_params.N > r.step_index - 1)
      CHECK(r.predicted_mtbf == mtbf(r.segment_params, r.step_index));
  }
}

TEST_CASE("exact model data predicts without error") {
  FailureDataset d("exact", "unit", oracle::exact_model(20, 0.01, 12));
  auto run = run_recursive(d, EstimatorKind::loglse());
  for (const auto& r : run.records) {
    if (r.fallback_used) continue;
    CHECK(r.re < 1e-5);
    CHECK(r.tbs < 1e-10);
  }
}

TEST_CASE("too short for recursive prediction") {
  CHECK_THROWS_AS(run_recursive(builtin(DatasetId::NTDS).prefix(3), EstimatorKind::mle()),
                  InvalidArgument);
}

TEST_CASE("alpha grid") {
  auto g = AlphaGrid::quarter_steps();
  REQUIRE(g.values().size() == 16);
  CHECK(g.values().front() == -2);
  CHECK(g.values()[3] == -1.25);
  CHECK(g.values().back() == 2);
  auto p = AlphaGrid::parse("-5/4, -1/2,0.25,1");
  CHECK(p.values() == std::vector<double>{-1.25, -0.5, 0.25, 1});
  CHECK_THROWS_AS(AlphaGrid::parse("1,0"), InvalidArgument);
  CHECK_THROWS_AS(AlphaGrid::parse("1,0.5"), InvalidArgument);
  CHECK_THROWS_AS(AlphaGrid::parse("1,x"), InvalidArgument);
  CHECK_THROWS_AS(AlphaGrid({}), InvalidArgument);
}

TEST_CASE("tie-break prefers alpha near one, then small |alpha|") {
  CHECK(alpha_preferred(0.75, -2));
  CHECK(alpha_preferred(1.25, 0.5));
  CHECK_FALSE(alpha_preferred(1.5, 0.5));
  // 0.5 and 1.5 are equally far from 1.
  CHECK(alpha_preferred(0.5, 1.5));
  std::vector<std::pair<double, PredictionRun>> runs(3);
  runs[0].first = -1;
  runs[1].first = 2;
  runs[2].first = 0.25;
  auto c = argmin_alpha(runs, [](const PredictionRun&) { return 3.0; });
  CHECK(c.alpha == 0.25);
}

TEST_CASE("sweep selections are grid minima") {
  auto d = builtin(DatasetId::JDM1);
  auto s = sweep_alpha(d, AlphaGrid::quarter_steps());
  double te = s.run_opt_te().summary.te_total;
  double tbs = s.run_opt_tbs().summary.tbs_total;
  auto best = best_alpha_by_re(s);
  for (const auto& [a, run] : s.runs()) {
    CHECK(te <= run.summary.te_total);
    CHECK(tbs <= run.summary.tbs_total);
    CHECK(best.value <= run.summary.re_total);
  }
  CHECK(best.value <= s.run_opt_te().summary.re_total);
  CHECK_THROWS_AS(s.run_for(0.3), IndexError);
}

TEST_CASE("alpha = 1 run is the LSE run") {
  auto d = builtin(DatasetId::JDM4);
  auto s = sweep_alpha(d, AlphaGrid::parse("0.5,1"));
  auto lse = run_recursive(d, EstimatorKind::lse());
  CHECK(s.run_for(1).summary.re_total == lse.summary.re_total);
  CHECK(s.run_for(1).summary.rbs_total == lse.summary.rbs_total);
}

TEST_CASE("threaded sweep equals sequential sweep") {
  auto d = builtin(DatasetId::ATT);
  auto g = AlphaGrid::quarter_steps();
  auto a = sweep_alpha(d, g, prediction_config(), 1);
  auto b = sweep_alpha(d, g, prediction_config(), 4);
  REQUIRE(a.runs().size() == b.runs().size());
  for (std::size_t k = 0; k < a.runs().size(); ++k) {
    CHECK(a.runs()[k].first == b.runs()[k].first);
    CHECK(a.runs()[k].second.summary.re_total == b.runs()[k].second.summary.re_total);
    CHECK(a.runs()[k].second.summary.tbs_total == b.runs()[k].second.summary.tbs_total);
  }
  CHECK(a.alpha_opt_te() == b.alpha_opt_te());
  CHECK(a.alpha_opt_tbs() == b.alpha_opt_tbs());
}

TEST_CASE("experiment cells") {
  auto e = run_experiment(builtin(DatasetId::JDM4));
  CHECK(e.reproduced(Criterion::RE, TableRow::MLE).value == e.mle.summary.re_total);
  CHECK(e.reproduced(Criterion::RBS, TableRow::LSE).value == e.lse().summary.rbs_total);
  auto opt = e.reproduced(Criterion::RE, TableRow::PowLseOpt);
  REQUIRE(opt.alpha);
  CHECK(*opt.alpha == e.sweep.alpha_opt_te());
  CHECK_FALSE(e.reproduced(Criterion::RE, TableRow::LogLSE).alpha);
}
