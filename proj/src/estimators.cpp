#include "fnlse/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <optional>
#include <vector>

#include "fnlse/errors.hpp"
#include "fnlse/transforms.hpp"

namespace fnlse {

namespace {

using Family = EstimatorKind::Family;

void require_domain(std::span<const double> x, double N) {
  const double n = static_cast<double>(x.size());
  if (!(N > n - 1) || !std::isfinite(N))
    throw DomainError(fmt::format("N = {} must exceed n - 1 = {}", N, n - 1));
}

// k_i = N - i + 1 for 1-based i.
inline double remaining(double N, std::size_t idx0) {
  return N - static_cast<double>(idx0);
}

double log_sum_exp(const std::vector<double>& v) {
  double m = *std::max_element(v.begin(), v.end());
  double s = 0;
  for (double e : v) s += std::exp(e - m);
  return m + std::log(s);
}

// Every root function is written with centre c = (n-1)/2 and
// d_i = 1/k_i - 1/(N - c) = (i-1-c) / (k_i (N - c)), which removes the part
// the two products share.
struct Centred {
  double c;
  double Nc;
  std::vector<double> d;
};

Centred centre(std::size_t n, double N) {
  Centred out{(static_cast<double>(n) - 1) / 2, 0, std::vector<double>(n)};
  out.Nc = N - out.c;
  for (std::size_t j = 0; j < n; ++j)
    out.d[j] = (static_cast<double>(j) - out.c) / (remaining(N, j) * out.Nc);
  return out;
}

Residual mle_residual(std::span<const double> x, double N) {
  double sx = 0, sw = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    sx += x[j];
    sw += static_cast<double>(j) * x[j];
  }
  const double t = sw / sx;
  Residual r{0, 0};
  for (std::size_t j = 0; j < x.size(); ++j) {
    double term = (static_cast<double>(j) - t) / (remaining(N, j) * (N - t));
    r.value += term;
    r.scale += std::abs(term);
  }
  return r;
}

Residual loglse_residual(std::span<const double> x, double N) {
  const std::size_t n = x.size();
  Centred cc = centre(n, N);
  double dbar = 0;
  for (double v : cc.d) dbar += v;
  dbar /= static_cast<double>(n);
  Residual r{0, 0};
  for (std::size_t j = 0; j < n; ++j) {
    // ln x_j + ln(k_j / (N - c)); the dropped constant ln(N - c) multiplies a
    // zero-sum weight.
    double L = std::log(x[j]) + std::log1p((cc.c - static_cast<double>(j)) / cc.Nc);
    double term = L * (dbar - cc.d[j]);
    r.value += term;
    r.scale += std::abs(term);
  }
  return r;
}

// sum a sum(b d) - sum(a d) sum b with a = (x/k)^alpha, b = k^(-2 alpha),
// evaluated with both families rescaled by their largest member. Newton runs
// on the rescaled function (same roots, magnitudes kept near one); `unscaled`
// restores the printed f(N).
Residual power_residual(std::span<const double> x, double alpha, double N,
                        bool unscaled = false) {
  const std::size_t n = x.size();
  Centred cc = centre(n, N);
  std::vector<double> la(n), lb(n);
  for (std::size_t j = 0; j < n; ++j) {
    double lk = std::log(remaining(N, j));
    la[j] = alpha * (std::log(x[j]) - lk);
    lb[j] = -2 * alpha * lk;
  }
  const double ma = *std::max_element(la.begin(), la.end());
  const double mb = *std::max_element(lb.begin(), lb.end());
  double sa = 0, sb = 0, sad = 0, sbd = 0, sad_abs = 0, sbd_abs = 0;
  for (std::size_t j = 0; j < n; ++j) {
    double a = std::exp(la[j] - ma);
    double b = std::exp(lb[j] - mb);
    sa += a;
    sb += b;
    sad += a * cc.d[j];
    sbd += b * cc.d[j];
    sad_abs += a * std::abs(cc.d[j]);
    sbd_abs += b * std::abs(cc.d[j]);
  }
  // The scale uses |d| inside the sums: at alpha = -1/2 the sum of b d
  // vanishes identically and |s1| + |s2| would understate the magnitudes.
  const double unscale = unscaled ? std::exp(ma + mb) : 1.0;
  return {(sa * sbd - sad * sb) * unscale, (sa * sbd_abs + sad_abs * sb) * unscale};
}

double power_phi(std::span<const double> x, double alpha, double N) {
  const std::size_t n = x.size();
  std::vector<double> num(n), den(n);
  for (std::size_t j = 0; j < n; ++j) {
    double lk = std::log(remaining(N, j));
    num[j] = -2 * alpha * lk;
    den[j] = alpha * (std::log(x[j]) - lk);
  }
  return std::exp((log_sum_exp(num) - log_sum_exp(den)) / alpha);
}

double rel_diff(double lhs, double rhs) {
  double m = std::max(std::abs(lhs), std::abs(rhs));
  return m == 0 ? 0.0 : std::abs(lhs - rhs) / m;
}

EstimationResult make_result(const EstimatorKind& kind, std::span<const double> x,
                             double N, const Residual& r) {
  JmParams p(N, profile_phi(kind, x, N));
  EstimationResult out{p, kind};
  out.residual = r.scale > 0 ? std::abs(r.value) / r.scale : std::abs(r.value);
  out.objective = objective(kind, x, p);
  return out;
}

struct Candidate {
  double N;
  int iterations;
};

// Every sign change on the geometric scan, each refined by bracketed Newton.
std::vector<Candidate> all_roots(const ResidualFn& f, double n, const SolverConfig& cfg) {
  const double lo = n - 1 + cfg.n_lower_offset;
  std::vector<Candidate> out;
  for (const Bracket& b : scan_brackets(f, n - 1, lo, cfg.n_upper, cfg.scan_points)) {
    RootResult rr = bracketed_newton(f, b, cfg);
    if (rr.status == RootStatus::Converged || rr.status == RootStatus::Stalled ||
        rr.status == RootStatus::MaxIterations)
      out.push_back({rr.root, rr.iterations});
  }
  return out;
}

EstimationResult pick_lowest(const EstimatorKind& kind, std::span<const double> x,
                             const ResidualFn& f, const std::vector<Candidate>& roots,
                             int base_iterations, const SolverConfig& cfg) {
  std::optional<EstimationResult> best;
  for (const Candidate& c : roots) {
    EstimationResult r = make_result(kind, x, c.N, f(c.N));
    r.iterations = base_iterations + c.iterations;
    if (!best || r.objective < best->objective) best = r;
  }
  best->roots_found = static_cast<int>(roots.size());
  best->converged = best->residual <= cfg.root_tol;
  best->status = best->converged ? EstimateStatus::Converged : EstimateStatus::NotConverged;
  return *best;
}

EstimationResult limit_model(const EstimatorKind& kind, std::span<const double> x,
                             const ResidualFn& f, int iterations, const SolverConfig& cfg) {
  EstimationResult r = make_result(kind, x, cfg.n_upper, f(cfg.n_upper));
  r.iterations = iterations;
  r.status = EstimateStatus::NoFiniteRoot;
  r.converged = false;
  return r;
}

}  // namespace

EstimatorKind EstimatorKind::powlse(double alpha) {
  if (alpha == 0 || !std::isfinite(alpha))
    throw InvalidArgument(fmt::format("power index must be finite and nonzero, got {}", alpha));
  return EstimatorKind(Family::PowLSE, alpha);
}

std::string EstimatorKind::label() const {
  switch (family_) {
    case Family::MLE: return "MLE";
    case Family::LSE: return "LSE";
    case Family::LogLSE: return "LogLSE";
    case Family::PowLSE: return fmt::format("powLSE({})", alpha_);
  }
  return "?";
}

double mle_root_fn(std::span<const double> x, double N) {
  require_domain(x, N);
  return mle_residual(x, N).value;
}

double lse_root_fn(std::span<const double> x, double N) {
  require_domain(x, N);
  return -power_residual(x, 1.0, N, true).value;
}

double loglse_root_fn(std::span<const double> x, double N) {
  require_domain(x, N);
  return loglse_residual(x, N).value;
}

double powlse_root_fn(std::span<const double> x, double alpha, double N) {
  require_domain(x, N);
  return power_residual(x, alpha, N, true).value;
}

Residual root_residual(const EstimatorKind& kind, std::span<const double> x, double N) {
  require_domain(x, N);
  switch (kind.family()) {
    case Family::MLE: return mle_residual(x, N);
    case Family::LSE: {
      Residual r = power_residual(x, 1.0, N);
      return {-r.value, r.scale};
    }
    case Family::LogLSE: return loglse_residual(x, N);
    case Family::PowLSE: return power_residual(x, kind.alpha(), N);
  }
  return {0, 0};
}

double profile_phi(const EstimatorKind& kind, std::span<const double> x, double N) {
  require_domain(x, N);
  const std::size_t n = x.size();
  switch (kind.family()) {
    case Family::MLE: {
      double sx = 0, sw = 0;
      for (std::size_t j = 0; j < n; ++j) {
        sx += x[j];
        sw += static_cast<double>(j) * x[j];
      }
      return static_cast<double>(n) / (N * sx - sw);
    }
    case Family::LogLSE: {
      double s = 0;
      for (std::size_t j = 0; j < n; ++j) s += std::log(x[j]) + std::log(remaining(N, j));
      return std::exp(-s / static_cast<double>(n));
    }
    case Family::LSE: return power_phi(x, 1.0, N);
    case Family::PowLSE: return power_phi(x, kind.alpha(), N);
  }
  return 0;
}

double objective(const EstimatorKind& kind, std::span<const double> x, const JmParams& p) {
  require_domain(x, p.N);
  const std::size_t n = x.size();
  if (kind.family() == Family::MLE) {
    double nll = 0;
    for (std::size_t j = 0; j < n; ++j) {
      double rate = p.phi * remaining(p.N, j);
      nll -= std::log(rate) - rate * x[j];
    }
    return nll;
  }
  std::vector<double> fitted = mtbf_series(p, n);
  Transform h = kind.family() == Family::LogLSE ? Transform::natural_log()
                : kind.family() == Family::LSE  ? Transform::identity()
                                                : Transform::power(kind.alpha());
  return fnlse_objective({x, fitted, h});
}

EquationResiduals verify_estimating_equations(const EstimatorKind& kind,
                                              std::span<const double> x,
                                              const JmParams& p) {
  require_domain(x, p.N);
  const std::size_t n = x.size();
  const double N = p.N;
  EquationResiduals out{0, 0};
  switch (kind.family()) {
    case Family::MLE: {
      double sx = 0, sw = 0, sk = 0;
      for (std::size_t j = 0; j < n; ++j) {
        sx += x[j];
        sw += static_cast<double>(j) * x[j];
        sk += 1 / remaining(N, j);
      }
      out.phi_equation = rel_diff(p.phi, static_cast<double>(n) / (N * sx - sw));
      out.n_equation = rel_diff(sk, static_cast<double>(n) / (N - sw / sx));
      break;
    }
    case Family::LogLSE: {
      double sl = 0, sk = 0, slk = 0;
      for (std::size_t j = 0; j < n; ++j) {
        double k = remaining(N, j);
        double L = std::log(x[j]) + std::log(k);
        sl += L;
        sk += 1 / k;
        slk += L / k;
      }
      out.phi_equation = rel_diff(p.phi, std::exp(-sl / static_cast<double>(n)));
      out.n_equation = rel_diff(sl / static_cast<double>(n) * sk, slk);
      break;
    }
    case Family::LSE:
    case Family::PowLSE: {
      const double a = kind.alpha();
      double s_xk = 0, s_k2a1 = 0, s_xa = 0, s_k2a = 0;
      for (std::size_t j = 0; j < n; ++j) {
        double k = remaining(N, j);
        s_xk += std::pow(x[j] / k, a);
        s_k2a1 += std::pow(k, -2 * a - 1);
        s_xa += std::pow(x[j], a) / std::pow(k, a + 1);
        s_k2a += std::pow(k, -2 * a);
      }
      out.phi_equation = rel_diff(std::pow(p.phi, a), s_k2a / s_xk);
      out.n_equation = rel_diff(s_xk * s_k2a1, s_xa * s_k2a);
      break;
    }
  }
  return out;
}

EstimationResult estimate(const EstimatorKind& kind, std::span<const double> x,
                          const SolverConfig& cfg) {
  cfg.validate();
  if (x.size() < 3)
    throw InvalidArgument(fmt::format("estimation needs at least 3 failures, got {}", x.size()));
  for (double v : x)
    if (!(v > 0)) throw DomainError("failure times must be positive");
  const double n = static_cast<double>(x.size());
  if (!(cfg.n_upper > n))
    throw InvalidArgument("n_upper must exceed the number of failures");

  ResidualFn f = [&](double N) { return root_residual(kind, x, N); };
  const double lo = n - 1 + cfg.n_lower_offset;

  if (cfg.policy == RootPolicy::GlobalScan) {
    auto roots = all_roots(f, n, cfg);
    if (roots.empty()) return limit_model(kind, x, f, 0, cfg);
    return pick_lowest(kind, x, f, roots, 0, cfg);
  }

  const double x0 = std::clamp(2 * n, lo + cfg.n_lower_offset, cfg.n_upper / 2);
  RootResult nr = newton_iterate(f, x0, lo, cfg.n_upper, cfg);
  switch (nr.status) {
    case RootStatus::Converged: {
      EstimationResult r = make_result(kind, x, nr.root, f(nr.root));
      r.iterations = nr.iterations;
      r.converged = true;
      r.status = EstimateStatus::Converged;
      r.roots_found = 1;
      return r;
    }
    case RootStatus::Escaped:
      return limit_model(kind, x, f, nr.iterations, cfg);
    default:
      break;
  }
  if (cfg.fallback) {
    auto roots = all_roots(f, n, cfg);
    if (roots.empty()) return limit_model(kind, x, f, nr.iterations, cfg);
    return pick_lowest(kind, x, f, roots, nr.iterations, cfg);
  }
  EstimationResult r = make_result(kind, x, nr.root, f(nr.root));
  r.iterations = nr.iterations;
  r.status = EstimateStatus::NotConverged;
  return r;
}

EstimationResult estimate_mle(const FailureDataset& data, const SolverConfig& cfg) {
  return estimate(EstimatorKind::mle(), data.times(), cfg);
}
EstimationResult estimate_lse(const FailureDataset& data, const SolverConfig& cfg) {
  return estimate(EstimatorKind::lse(), data.times(), cfg);
}
EstimationResult estimate_loglse(const FailureDataset& data, const SolverConfig& cfg) {
  return estimate(EstimatorKind::loglse(), data.times(), cfg);
}
EstimationResult estimate_powlse(const FailureDataset& data, double alpha,
                                 const SolverConfig& cfg) {
  return estimate(EstimatorKind::powlse(alpha), data.times(), cfg);
}

const char* to_string(EstimateStatus status) {
  switch (status) {
    case EstimateStatus::Converged: return "converged";
    case EstimateStatus::NoFiniteRoot: return "no-finite-root";
    case EstimateStatus::NotConverged: return "not-converged";
  }
  return "unknown";
}

}  // namespace fnlse
