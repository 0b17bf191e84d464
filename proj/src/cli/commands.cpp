#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "cli/output_table.hpp"
#include "fnlse/datasets.hpp"
#include "fnlse/errors.hpp"
#include "fnlse/experiment.hpp"

namespace fnlse::cli {

namespace {

struct Options {
  std::string dataset;
  std::string estimator;
  std::optional<double> alpha;
  std::string format = "human";
  std::string emit;
  std::optional<double> root_tol;
  std::optional<int> max_iter;
  std::string root_policy;
  std::string grid;
  std::string table;
  unsigned threads = 1;
};

FailureDataset resolve_dataset(const Options& o) {
  const std::string& ref = o.dataset;
  if (auto id = parse_dataset_id(ref)) return builtin(*id);
  std::filesystem::path p(ref);
  if (!std::filesystem::exists(p))
    throw InvalidArgument(fmt::format("'{}' is neither a built-in dataset nor a file", ref));
  return load(p, format_for(p));
}

EstimatorKind resolve_estimator(const Options& o) {
  const std::string& e = o.estimator;
  if (e == "powlse") {
    if (!o.alpha) throw InvalidArgument("powlse needs --alpha");
    return EstimatorKind::powlse(*o.alpha);
  }
  if (o.alpha) throw InvalidArgument("--alpha only applies to powlse");
  if (e == "mle") return EstimatorKind::mle();
  if (e == "lse") return EstimatorKind::lse();
  if (e == "loglse") return EstimatorKind::loglse();
  throw InvalidArgument(fmt::format("unknown estimator '{}' (mle, lse, loglse, powlse)", e));
}

SolverConfig resolve_solver(const Options& o, RootPolicy fallback_policy) {
  SolverConfig cfg;
  cfg.policy = fallback_policy;
  if (o.root_tol) cfg.root_tol = *o.root_tol;
  if (o.max_iter) cfg.max_iter = *o.max_iter;
  if (o.root_policy == "global") cfg.policy = RootPolicy::GlobalScan;
  else if (o.root_policy == "newton") cfg.policy = RootPolicy::NewtonFromStart;
  else if (!o.root_policy.empty())
    throw InvalidArgument(fmt::format("unknown root policy '{}' (global, newton)", o.root_policy));
  cfg.validate();
  return cfg;
}

AlphaGrid resolve_grid(const Options& o) {
  return o.grid.empty() ? AlphaGrid::quarter_steps() : AlphaGrid::parse(o.grid);
}

void write_file(const std::filesystem::path& path, const OutputTable& t) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw InvalidArgument(fmt::format("cannot write {}", path.string()));
  t.render(f, Format::Csv);
}

std::string alpha_text(double a) {
  // Quarter fractions as on the grid.
  double q = a * 4;
  if (q == std::floor(q)) {
    long v = static_cast<long>(q);
    if (v % 4 == 0) return std::to_string(v / 4);
    if (v % 2 == 0) return fmt::format("{}/2", v / 2);
    return fmt::format("{}/4", v);
  }
  return full_precision(a);
}

OutputTable steps_table(const PredictionRun& run, const FailureDataset& data) {
  OutputTable t({"i", "N_hat", "phi_hat", "mtbf_hat", "x_i", "TE_i", "RE_i", "TBS_i", "RBS_i",
                 "fallback_used"});
  for (const StepRecord& r : run.records) {
    t.add_row({static_cast<std::int64_t>(r.step_index), r.segment_params.N, r.segment_params.phi,
               r.predicted_mtbf, data[r.step_index - 1], r.te, r.re, r.tbs, r.rbs,
               r.fallback_used});
  }
  return t;
}

int cmd_estimate(const Options& o, std::ostream& out) {
  FailureDataset data = resolve_dataset(o);
  EstimatorKind kind = resolve_estimator(o);
  EstimationResult r = estimate(kind, data.times(), resolve_solver(o, RootPolicy::GlobalScan));
  OutputTable t({"dataset", "estimator", "N_hat", "phi_hat", "objective", "iterations",
                 "residual", "converged", "status", "roots_found"});
  t.add_row({data.name(), kind.label(), r.params.N, r.params.phi, r.objective,
             static_cast<std::int64_t>(r.iterations), r.residual, r.converged,
             std::string(to_string(r.status)), static_cast<std::int64_t>(r.roots_found)});
  Format f = parse_format(o.format);
  if (f == Format::Human) {
    for (std::size_t c = 0; c < t.columns().size(); ++c) {
      const Cell& cell = t.rows()[0][c];
      std::string v;
      if (auto* d = std::get_if<double>(&cell)) v = fmt::format("{:.10g}", *d);
      else if (auto* s = std::get_if<std::string>(&cell)) v = *s;
      else if (auto* i = std::get_if<std::int64_t>(&cell)) v = std::to_string(*i);
      else v = std::get<bool>(cell) ? "yes" : "no";
      out << fmt::format("{:<12} {}\n", t.columns()[c], v);
    }
  } else {
    t.render(out, f);
  }
  return r.converged ? kOk : kNotConverged;
}

int cmd_predict(const Options& o, std::ostream& out) {
  FailureDataset data = resolve_dataset(o);
  EstimatorKind kind = resolve_estimator(o);
  PredictionRun run = run_recursive(data, kind, resolve_solver(o, RootPolicy::NewtonFromStart));
  if (!o.emit.empty()) write_file(o.emit, steps_table(run, data));
  OutputTable t({"dataset", "estimator", "TE", "RE", "TBS", "RBS", "steps", "fallback_steps"});
  t.add_row({data.name(), kind.label(), run.summary.te_total, run.summary.re_total,
             run.summary.tbs_total, run.summary.rbs_total,
             static_cast<std::int64_t>(run.records.size()),
             static_cast<std::int64_t>(run.fallback_count)});
  t.render(out, parse_format(o.format));
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  FailureDataset data = resolve_dataset(o);
  SweepResult s = sweep_alpha(data, resolve_grid(o),
                              resolve_solver(o, RootPolicy::NewtonFromStart), o.threads);
  AlphaChoice best_re = best_alpha_by_re(s);
  AlphaChoice best_rbs = best_alpha_by_rbs(s);
  OutputTable t({"alpha", "TE", "RE", "TBS", "RBS", "fallback_steps", "opt_te", "opt_tbs",
                 "best_re", "best_rbs"});
  for (const auto& [a, run] : s.runs()) {
    t.add_row({a, run.summary.te_total, run.summary.re_total, run.summary.tbs_total,
               run.summary.rbs_total, static_cast<std::int64_t>(run.fallback_count),
               a == s.alpha_opt_te(), a == s.alpha_opt_tbs(), a == best_re.alpha,
               a == best_rbs.alpha});
  }
  if (!o.emit.empty()) write_file(o.emit, t);
  Format f = parse_format(o.format);
  t.render(out, f);
  if (f == Format::Human) {
    out << fmt::format("\n{}: alpha opt (TE) {} -> RE {:.3f}\n", data.name(),
                       alpha_text(s.alpha_opt_te()), s.run_opt_te().summary.re_total);
    out << fmt::format("{}: alpha opt (TBS) {} -> RBS {:.3f}\n", data.name(),
                       alpha_text(s.alpha_opt_tbs()), s.run_opt_tbs().summary.rbs_total);
    out << fmt::format("{}: alpha best (RE) {} -> RE {:.3f}\n", data.name(),
                       alpha_text(best_re.alpha), best_re.value);
    out << fmt::format("{}: alpha best (RBS) {} -> RBS {:.3f}\n", data.name(),
                       alpha_text(best_rbs.alpha), best_rbs.value);
  }
  return kOk;
}

int cmd_reproduce(const Options& o, std::ostream& out) {
  std::vector<Criterion> tables;
  if (o.table.empty() || o.table == "7") tables.push_back(Criterion::RE);
  if (o.table.empty() || o.table == "8") tables.push_back(Criterion::RBS);
  if (tables.empty()) throw InvalidArgument(fmt::format("unknown table '{}' (7 or 8)", o.table));

  AlphaGrid grid = resolve_grid(o);
  SolverConfig cfg = resolve_solver(o, RootPolicy::NewtonFromStart);
  std::vector<DatasetExperiment> runs;
  for (DatasetId id : all_datasets()) runs.push_back(run_experiment(builtin(id), grid, cfg, o.threads));

  Format f = parse_format(o.format);
  bool first = true;
  for (Criterion c : tables) {
    OutputTable t({"table", "dataset", "row", "alpha", "value", "reference_alpha", "reference_value",
                   "deviation_pct"});
    const std::string name = c == Criterion::RE ? "RE" : "RBS";
    for (std::size_t k = 0; k < runs.size(); ++k) {
      DatasetId id = all_datasets()[k];
      for (TableRow row : all_rows()) {
        ReferenceValue got = runs[k].reproduced(c, row);
        ReferenceValue ref = reference_value(c, id, row);
        Cell ga = got.alpha ? Cell(f == Format::Human ? alpha_text(*got.alpha)
                                                      : full_precision(*got.alpha))
                            : Cell(std::string("-"));
        Cell ra = ref.alpha ? Cell(f == Format::Human ? alpha_text(*ref.alpha)
                                                      : full_precision(*ref.alpha))
                            : Cell(std::string("-"));
        t.add_row({name, std::string(display_name(id)), std::string(row_label(row)), ga,
                   got.value, ra, ref.value, (got.value - ref.value) / ref.value * 100});
      }
    }
    if (!o.emit.empty())
      write_file(std::filesystem::path(o.emit) / (c == Criterion::RE ? "re_table.csv"
                                                                     : "braun_table.csv"),
                 t);
    if (f != Format::JsonLines && !first) out << '\n';
    t.render(out, f);
    first = false;
  }
  if (!o.emit.empty()) {
    for (const DatasetExperiment& e : runs) {
      OutputTable s({"alpha", "TE", "RE", "TBS", "RBS"});
      for (const auto& [a, run] : e.sweep.runs())
        s.add_row({a, run.summary.te_total, run.summary.re_total, run.summary.tbs_total,
                   run.summary.rbs_total});
      std::string stem = std::string(id_name(*parse_dataset_id(e.data.name())));
      write_file(std::filesystem::path(o.emit) / (stem + "_sweep.csv"), s);
      write_file(std::filesystem::path(o.emit) / (stem + "_mle_steps.csv"), steps_table(e.mle, e.data));
      write_file(std::filesystem::path(o.emit) / (stem + "_loglse_steps.csv"),
                 steps_table(e.loglse, e.data));
    }
  }
  return kOk;
}

int cmd_variance(const Options& o, std::ostream& out) {
  FailureDataset data = resolve_dataset(o);
  if (data.size() < 4)
    throw InvalidArgument(fmt::format("variance profile needs n >= 4, got {}", data.size()));
  SolverConfig cfg = resolve_solver(o, RootPolicy::NewtonFromStart);
  SweepResult s = sweep_alpha(data, resolve_grid(o), cfg, o.threads);
  const EstimatorKind kinds[] = {EstimatorKind::mle(), EstimatorKind::loglse(),
                                 EstimatorKind::powlse(s.alpha_opt_te()),
                                 EstimatorKind::powlse(s.alpha_opt_tbs())};
  OutputTable t({"m", "variance", "var_mle", "var_loglse", "var_powlse_re", "var_powlse_bs"});
  for (std::size_t m = 3; m < data.size(); ++m) {
    auto seg = data.times().first(m);
    std::vector<std::pair<EstimatorKind, std::vector<double>>> fits;
    for (const EstimatorKind& k : kinds)
      fits.emplace_back(k, mtbf_series(estimate(k, seg, cfg).params, m));
    VarianceProfile v = variance_profile(data.times(), m, fits);
    std::vector<Cell> row{static_cast<std::int64_t>(m), v.sample_variance};
    for (const auto& entry : v.residual_variance_by_estimator) row.emplace_back(entry.second);
    t.add_row(std::move(row));
  }
  if (!o.emit.empty()) write_file(o.emit, t);
  Format f = parse_format(o.format);
  if (f == Format::Human)
    out << fmt::format("{}: powLSE RE alpha {}, powLSE BS alpha {}\n", data.name(),
                       alpha_text(s.alpha_opt_te()), alpha_text(s.alpha_opt_tbs()));
  t.render(out, f);
  return kOk;
}

void add_common(CLI::App* sub, Options& o, bool dataset, bool estimator) {
  if (dataset) {
    sub->add_option("dataset,--dataset", o.dataset, "Built-in id (ntds, jdm1..jdm4, att) or file path")
        ->required();
  }
  if (estimator) {
    sub->add_option("estimator", o.estimator, "mle, lse, loglse or powlse")->required();
    sub->add_option("--alpha", o.alpha, "Power index for powlse");
  }
  sub->add_option("--format", o.format, "human, csv or jsonl");
  sub->add_option("--emit", o.emit, "Write CSV output to this path");
  sub->add_option("--root-tol", o.root_tol, "Root tolerance relative to the term scale");
  sub->add_option("--max-iter", o.max_iter, "Newton iteration limit");
  sub->add_option("--root-policy", o.root_policy, "global or newton");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jelinski-Moranda estimation with transformed least squares"};
  app.require_subcommand(1);
  Options o;

  auto* est = app.add_subcommand("estimate", "Fit one estimator on a dataset");
  add_common(est, o, true, true);
  auto* pred = app.add_subcommand("predict", "Recursive one-step-ahead prediction");
  add_common(pred, o, true, true);
  auto* sw = app.add_subcommand("sweep", "Power-index sweep over the alpha grid");
  add_common(sw, o, true, false);
  auto* rep = app.add_subcommand("reproduce", "RE and Braun tables on all built-in datasets");
  add_common(rep, o, false, false);
  rep->add_option("--table", o.table, "7 (RE) or 8 (Braun); both when omitted");
  auto* var = app.add_subcommand("variance", "Residual variance profile");
  add_common(var, o, true, false);
  for (auto* s : {sw, rep, var}) {
    s->add_option("--grid", o.grid, "Comma-separated alpha values, fractions allowed");
    s->add_option("--threads", o.threads, "Worker threads for the alpha grid");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
      err << sub->help();
    else
      err << app.help();
    return kInputError;
  }

  try {
    if (est->parsed()) return cmd_estimate(o, out);
    if (pred->parsed()) return cmd_predict(o, out);
    if (sw->parsed()) return cmd_sweep(o, out);
    if (rep->parsed()) return cmd_reproduce(o, out);
    if (var->parsed()) return cmd_variance(o, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace fnlse::cli
