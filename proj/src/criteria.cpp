#include "fnlse/criteria.hpp"

#include <cmath>
#include <fmt/format.h>

#include "fnlse/errors.hpp"

namespace fnlse {

namespace {

void same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw IndexError(fmt::format("{}: {} observations, {} fitted values", what, a, b));
}

// Corrected ratio of squared prediction error to squared deviation from
// `mean`, summed over [from, to).
double braun_ratio(std::span<const double> x, std::span<const double> m,
                   std::size_t from, std::size_t to, double mean, double correction) {
  double num = 0, den = 0;
  for (std::size_t j = from; j < to; ++j) {
    num += (x[j] - m[j]) * (x[j] - m[j]);
    den += (x[j] - mean) * (x[j] - mean);
  }
  if (den == 0) throw DegenerateVariance("Braun statistic of a constant sequence");
  return num / den * correction;
}

double mean_of(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

}  // namespace

double te_segment(std::span<const double> x, std::size_t upto,
                  std::span<const double> fitted_mtbf) {
  if (upto < 2 || upto - 1 > x.size() || fitted_mtbf.size() < upto - 1)
    throw IndexError(fmt::format("te_segment up to {} with {} observations, {} fitted",
                                 upto, x.size(), fitted_mtbf.size()));
  double s = 0;
  for (std::size_t j = 0; j + 1 < upto; ++j) s += std::abs(x[j] - fitted_mtbf[j]) / x[j];
  return s * 100;
}

double re_step(double x, double predicted) {
  if (!(x > 0)) throw DomainError("observed time must be positive");
  return std::abs(x - predicted) / x * 100;
}

double braun(std::span<const double> observed, std::span<const double> predicted,
             std::size_t s) {
  same_length(observed.size(), predicted.size(), "braun");
  const std::size_t n = observed.size();
  if (s < 1 || n < 3 || s > n - 2)
    throw IndexError(fmt::format("braun start {} outside 1..{}", s, n < 3 ? 0 : n - 2));
  const double correction = static_cast<double>(n - s) / static_cast<double>(n - s - 1);
  return braun_ratio(observed, predicted, s - 1, n, mean_of(observed), correction);
}

double tbs_segment(std::span<const double> prefix, std::span<const double> fitted_mtbf) {
  same_length(prefix.size(), fitted_mtbf.size(), "tbs_segment");
  const std::size_t i = prefix.size() + 1;
  if (i < 4) throw IndexError("tbs_segment needs a prefix of at least 3 values");
  return braun_ratio(prefix, fitted_mtbf, 0, prefix.size(), mean_of(prefix),
                     static_cast<double>(i - 2) / static_cast<double>(i - 3));
}

double rbs_step(std::span<const double> prefix_incl, std::span<const double> fitted_mtbf) {
  same_length(prefix_incl.size(), fitted_mtbf.size(), "rbs_step");
  const std::size_t i = prefix_incl.size();
  if (i < 4) throw IndexError("rbs_step needs at least 4 values");
  return braun_ratio(prefix_incl, fitted_mtbf, 0, i, mean_of(prefix_incl),
                     static_cast<double>(i - 1) / static_cast<double>(i - 2));
}

CriterionSummary summarize(std::span<const StepRecord> records, std::size_t n) {
  if (n < 4) throw InvalidArgument(fmt::format("summary needs n >= 4, got {}", n));
  CriterionSummary s;
  s.n = n;
  for (const StepRecord& r : records) {
    s.te_total += r.te;
    s.re_total += r.re;
    s.tbs_total += r.tbs;
    s.rbs_total += r.rbs;
  }
  const double d = static_cast<double>(n - 3);
  s.te_total /= d;
  s.re_total /= d;
  s.tbs_total /= d;
  s.rbs_total /= d;
  return s;
}

double VarianceProfile::residual_variance(const EstimatorKind& kind) const {
  for (const auto& [k, v] : residual_variance_by_estimator)
    if (k == kind) return v;
  throw IndexError(fmt::format("no residual variance for {}", kind.label()));
}

VarianceProfile variance_profile(
    std::span<const double> x, std::size_t m,
    std::span<const std::pair<EstimatorKind, std::vector<double>>> fits) {
  if (m == 0 || m > x.size())
    throw IndexError(fmt::format("segment length {} outside 1..{}", m, x.size()));
  VarianceProfile out;
  out.segment_length = m;
  auto seg = x.first(m);
  const double mean = mean_of(seg);
  double ss = 0;
  for (double v : seg) ss += (v - mean) * (v - mean);
  out.sample_variance = ss / static_cast<double>(m);
  for (const auto& [kind, fitted] : fits) {
    same_length(m, fitted.size(), "variance_profile");
    double r = 0;
    for (std::size_t j = 0; j < m; ++j) r += (seg[j] - fitted[j]) * (seg[j] - fitted[j]);
    out.residual_variance_by_estimator.emplace_back(kind, r / static_cast<double>(m));
  }
  return out;
}

}  // namespace fnlse
