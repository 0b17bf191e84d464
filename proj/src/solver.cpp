#include "fnlse/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fnlse/errors.hpp"

namespace fnlse {

namespace {

bool within_tol(const Residual& r, double tol) {
  return std::abs(r.value) <= tol * r.scale;
}

double relative(const Residual& r) {
  return r.scale > 0 ? std::abs(r.value) / r.scale : std::abs(r.value);
}

RootResult finish(double x, int it, const Residual& r, RootStatus st,
                  bool bisected = false) {
  RootResult out;
  out.root = x;
  out.iterations = it;
  out.residual = relative(r);
  out.status = st;
  out.converged = st == RootStatus::Converged;
  out.used_bisection = bisected;
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(root_tol > 0) || max_iter <= 0 || !(n_lower_offset > 0) ||
      !(n_upper > 0) || scan_points < 2)
    throw InvalidArgument("solver settings must be positive (scan_points >= 2)");
}

double numeric_derivative(const ResidualFn& f, double x, double lo) {
  const double h = std::max(1e-6, 1e-8 * std::abs(x));
  if (x - h <= lo) return (f(x + h).value - f(x).value) / h;
  return (f(x + h).value - f(x - h).value) / (2 * h);
}

RootResult newton_iterate(const ResidualFn& f, double x0, double lo, double hi,
                          const SolverConfig& cfg, const DerivativeFn& fprime) {
  double x = x0;
  Residual r{std::numeric_limits<double>::quiet_NaN(), 1.0};
  for (int it = 0; it < cfg.max_iter; ++it) {
    r = f(x);
    if (!std::isfinite(r.value)) return finish(x, it, r, RootStatus::Stalled);
    if (within_tol(r, cfg.root_tol)) return finish(x, it, r, RootStatus::Converged);
    double d = fprime ? fprime(x) : numeric_derivative(f, x, lo);
    if (d == 0 || !std::isfinite(d)) return finish(x, it, r, RootStatus::Stalled);
    double next = x - r.value / d;
    if (!std::isfinite(next)) return finish(x, it, r, RootStatus::Stalled);
    if (next <= lo) next = 0.5 * (x + lo);
    if (next >= hi) return finish(hi, it + 1, f(hi), RootStatus::Escaped);
    x = next;
  }
  return finish(x, cfg.max_iter, f(x), RootStatus::MaxIterations);
}

std::vector<Bracket> scan_brackets(const ResidualFn& f, double origin,
                                   double lo, double hi, int points) {
  std::vector<Bracket> out;
  if (points < 2 || !(lo > origin) || !(hi > lo)) return out;
  const double a = std::log(lo - origin);
  const double b = std::log(hi - origin);
  double prev_x = 0, prev_v = std::numeric_limits<double>::quiet_NaN();
  for (int j = 0; j < points; ++j) {
    double x = j == 0 ? lo
               : j == points - 1 ? hi
                                 : origin + std::exp(a + (b - a) * j / (points - 1));
    double v = f(x).value;
    if (std::isfinite(v)) {
      if (v == 0) {
        out.push_back({x, x});
      } else if (std::isfinite(prev_v) && prev_v != 0 && (v < 0) != (prev_v < 0)) {
        out.push_back({prev_x, x});
      }
    }
    prev_x = x;
    prev_v = v;
  }
  return out;
}

RootResult bracketed_newton(const ResidualFn& f, Bracket b,
                            const SolverConfig& cfg, const DerivativeFn& fprime) {
  double a = b.lo, c = b.hi;
  Residual fa = f(a);
  if (a == c) return finish(a, 0, fa, RootStatus::Converged);
  Residual fc = f(c);
  if (within_tol(fa, cfg.root_tol)) return finish(a, 0, fa, RootStatus::Converged);
  if (within_tol(fc, cfg.root_tol)) return finish(c, 0, fc, RootStatus::Converged);
  if ((fa.value < 0) == (fc.value < 0)) return finish(a, 0, fa, RootStatus::NoSignChange);

  bool bisected = false;
  double x = std::abs(fa.value) < std::abs(fc.value) ? a : c;
  Residual r = std::abs(fa.value) < std::abs(fc.value) ? fa : fc;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    double d = fprime ? fprime(x) : numeric_derivative(f, x, a);
    double next = x - r.value / d;
    if (!(d != 0) || !std::isfinite(next) || next <= a || next >= c) {
      next = 0.5 * (a + c);
      bisected = true;
    }
    x = next;
    r = f(x);
    if (within_tol(r, cfg.root_tol)) return finish(x, it, r, RootStatus::Converged, bisected);
    if ((r.value < 0) == (fa.value < 0)) {
      a = x;
      fa = r;
    } else {
      c = x;
    }
    if (c - a <= 4 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
      // Bracket exhausted at machine precision.
      return finish(x, it, r, RootStatus::Stalled, bisected);
    }
  }
  return finish(x, cfg.max_iter, r, RootStatus::MaxIterations, bisected);
}

RootResult bisect(const ResidualFn& f, Bracket b, const SolverConfig& cfg) {
  double a = b.lo, c = b.hi;
  Residual fa = f(a);
  if (a == c) return finish(a, 0, fa, RootStatus::Converged, true);
  Residual fc = f(c);
  if ((fa.value < 0) == (fc.value < 0) && fa.value != 0 && fc.value != 0)
    return finish(a, 0, fa, RootStatus::NoSignChange, true);
  double x = a;
  Residual r = fa;
  const int cap = std::max(cfg.max_iter, 2000);
  for (int it = 1; it <= cap; ++it) {
    x = 0.5 * (a + c);
    if (x <= a || x >= c) return finish(x, it, r, RootStatus::Converged, true);
    r = f(x);
    if (r.value == 0) return finish(x, it, r, RootStatus::Converged, true);
    if ((r.value < 0) == (fa.value < 0)) {
      a = x;
      fa = r;
    } else {
      c = x;
    }
  }
  return finish(x, cap, r, RootStatus::MaxIterations, true);
}

RootResult newton_solve(const ResidualFn& f, double x0, double lo, double hi,
                        const SolverConfig& cfg, const DerivativeFn& fprime) {
  if (!(lo < x0 && x0 < hi))
    throw InvalidArgument("initial guess must lie strictly inside (lo, hi)");
  RootResult nr = newton_iterate(f, x0, lo, hi, cfg, fprime);
  if (nr.converged || !cfg.fallback) return nr;
  const double origin = lo - std::max(1e-12, 1e-9 * (hi - lo));
  auto brackets = scan_brackets(f, origin, lo, hi, cfg.scan_points);
  if (brackets.empty()) {
    nr.status = RootStatus::NoSignChange;
    return nr;
  }
  RootResult br = bisect(f, brackets.front(), cfg);
  br.iterations += nr.iterations;
  if (br.status == RootStatus::Converged && !(br.residual <= cfg.root_tol)) {
    // Bisection pinned the sign change to machine precision but cancellation
    // in f keeps |f| above tolerance.
    br.status = RootStatus::Stalled;
    br.converged = false;
  }
  return br;
}

RootResult newton_solve(const std::function<double(double)>& f, double x0,
                        double lo, double hi, const SolverConfig& cfg,
                        const DerivativeFn& fprime) {
  ResidualFn wrapped = [&f](double x) { return Residual{f(x), 1.0}; };
  return newton_solve(wrapped, x0, lo, hi, cfg, fprime);
}

const char* to_string(RootStatus status) {
  switch (status) {
    case RootStatus::Converged: return "converged";
    case RootStatus::Escaped: return "escaped";
    case RootStatus::Stalled: return "stalled";
    case RootStatus::NoSignChange: return "no-sign-change";
    case RootStatus::MaxIterations: return "max-iterations";
  }
  return "unknown";
}

}  // namespace fnlse
