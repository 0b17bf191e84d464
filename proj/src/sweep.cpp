#include "fnlse/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <limits>
#include <optional>
#include <thread>

#include "fnlse/errors.hpp"

namespace fnlse {

SolverConfig prediction_config() {
  SolverConfig cfg;
  cfg.policy = RootPolicy::NewtonFromStart;
  return cfg;
}

namespace {

double braun_or_nan(auto&& fn) {
  try {
    return fn();
  } catch (const DegenerateVariance&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

std::optional<double> parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

PredictionRun run_recursive(const FailureDataset& data, const EstimatorKind& estimator,
                            const SolverConfig& cfg) {
  const std::size_t n = data.size();
  if (n < 4)
    throw InvalidArgument(fmt::format("recursive prediction needs n >= 4, got {}", n));
  std::span<const double> x = data.times();
  PredictionRun run;
  run.dataset = data.name();
  run.estimator = estimator;
  run.records.reserve(n - 3);
  for (std::size_t i = 4; i <= n; ++i) {
    auto seg = x.first(i - 1);
    EstimationResult est = estimate(estimator, seg, cfg);
    std::vector<double> fitted = mtbf_series(est.params, i - 1);

    StepRecord rec;
    rec.step_index = i;
    rec.segment_params = est.params;
    // Raw 1 / (phi (N - i + 1)): N-hat only has to exceed i - 2 on the
    // segment, so the step ahead can sit past the last estimated fault.
    rec.predicted_mtbf =
        1.0 / (est.params.phi * (est.params.N - static_cast<double>(i) + 1.0));
    rec.fallback_used = est.status != EstimateStatus::Converged;
    rec.iterations = est.iterations;
    rec.te = te_segment(x, i, fitted);
    rec.re = re_step(x[i - 1], rec.predicted_mtbf);
    rec.tbs = braun_or_nan([&] { return tbs_segment(seg, fitted); });
    fitted.push_back(rec.predicted_mtbf);
    rec.rbs = braun_or_nan([&] { return rbs_step(x.first(i), fitted); });
    if (rec.fallback_used) ++run.fallback_count;
    run.records.push_back(rec);
  }
  run.summary = summarize(run.records, n);
  return run;
}

AlphaGrid::AlphaGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidArgument("alpha grid is empty");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (values_[k] == 0 || !std::isfinite(values_[k]))
      throw InvalidArgument("alpha grid entries must be finite and nonzero");
    if (k > 0 && !(values_[k] > values_[k - 1]))
      throw InvalidArgument("alpha grid must be strictly increasing");
  }
}

AlphaGrid AlphaGrid::quarter_steps() {
  std::vector<double> v;
  for (int q = -8; q <= 8; ++q)
    if (q != 0) v.push_back(q / 4.0);
  return AlphaGrid(std::move(v));
}

AlphaGrid AlphaGrid::parse(const std::string& spec) {
  std::vector<double> v;
  std::string_view rest(spec);
  while (true) {
    std::size_t comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    std::optional<double> value;
    if (std::size_t slash = item.find('/'); slash != std::string_view::npos) {
      auto num = parse_number(item.substr(0, slash));
      auto den = parse_number(item.substr(slash + 1));
      if (num && den && *den != 0) value = *num / *den;
    } else {
      value = parse_number(item);
    }
    if (!value) throw InvalidArgument(fmt::format("bad alpha grid entry '{}'", item));
    v.push_back(*value);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return AlphaGrid(std::move(v));
}

bool alpha_preferred(double a, double b) {
  const double da = std::abs(a - 1), db = std::abs(b - 1);
  if (da != db) return da < db;
  return std::abs(a) < std::abs(b);
}

SweepResult::SweepResult(std::vector<std::pair<double, PredictionRun>> runs)
    : runs_(std::move(runs)) {
  if (runs_.empty()) throw InvalidArgument("sweep without runs");
  alpha_opt_te_ = argmin_alpha(runs_, [](const PredictionRun& r) { return r.summary.te_total; }).alpha;
  alpha_opt_tbs_ = argmin_alpha(runs_, [](const PredictionRun& r) { return r.summary.tbs_total; }).alpha;
}

const PredictionRun& SweepResult::run_for(double alpha) const {
  for (const auto& [a, run] : runs_)
    if (a == alpha) return run;
  throw IndexError(fmt::format("alpha {} is not on the sweep grid", alpha));
}

SweepResult sweep_alpha(const FailureDataset& data, const AlphaGrid& grid,
                        const SolverConfig& cfg, unsigned threads) {
  const auto& alphas = grid.values();
  std::vector<std::optional<PredictionRun>> slots(alphas.size());
  auto work = [&](std::size_t k) {
    slots[k] = run_recursive(data, EstimatorKind::powlse(alphas[k]), cfg);
  };

  const unsigned workers = std::min<std::size_t>(std::max(1u, threads), alphas.size());
  if (workers <= 1) {
    for (std::size_t k = 0; k < alphas.size(); ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k; (k = next.fetch_add(1)) < alphas.size();) work(k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<std::pair<double, PredictionRun>> runs;
  runs.reserve(alphas.size());
  for (std::size_t k = 0; k < alphas.size(); ++k) runs.emplace_back(alphas[k], std::move(*slots[k]));
  return SweepResult(std::move(runs));
}

AlphaChoice best_alpha_by_re(const SweepResult& sweep) {
  return argmin_alpha(sweep.runs(), [](const PredictionRun& r) { return r.summary.re_total; });
}

AlphaChoice best_alpha_by_rbs(const SweepResult& sweep) {
  return argmin_alpha(sweep.runs(), [](const PredictionRun& r) { return r.summary.rbs_total; });
}

}  // namespace fnlse
