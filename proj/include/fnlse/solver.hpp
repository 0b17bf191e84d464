#pragma once

// One-dimensional root finding on an open interval (lo, hi): Newton-Raphson
// with a bisection safety net, plus the bracket scan used to enumerate
// candidate roots.

#include <functional>
#include <vector>

namespace fnlse {

/// How the estimators pick N-hat among the solutions of their estimating
/// equation.
enum class RootPolicy {
  /// Scan (lo, hi) for sign changes, solve every bracket and keep the root
  /// with the smallest objective.
  GlobalScan,
  /// Plain Newton-Raphson from the initial guess. An iterate that runs past
  /// n_upper means the equation has no finite solution reachable from the
  /// start; bisection is only used when Newton stalls.
  NewtonFromStart,
};

struct SolverConfig {
  double root_tol = 1e-10;       // on |f| relative to the scale of its terms
  int max_iter = 200;
  double n_lower_offset = 1e-6;  // search N > n - 1 + offset
  double n_upper = 1e7;
  bool fallback = true;          // bisection when Newton fails
  int scan_points = 64;
  RootPolicy policy = RootPolicy::GlobalScan;

  /// Throws InvalidArgument if any field is non-positive.
  void validate() const;
};

/// f(x) together with the magnitude of the terms it was formed from, so
/// convergence can be judged relative to the cancellation involved.
struct Residual {
  double value;
  double scale = 1.0;
};

using ResidualFn = std::function<Residual(double)>;
using DerivativeFn = std::function<double(double)>;

enum class RootStatus {
  Converged,
  Escaped,       // Newton iterate left through the upper bound
  Stalled,       // derivative zero or non-finite
  NoSignChange,  // bracket scan found nothing to bisect
  MaxIterations,
};

struct RootResult {
  double root = 0.0;
  int iterations = 0;
  double residual = 0.0;  // |f(root)| / scale
  bool converged = false;
  RootStatus status = RootStatus::MaxIterations;
  bool used_bisection = false;
};

struct Bracket {
  double lo;
  double hi;
};

/// Central difference with step max(1e-6, 1e-8 |x|), one-sided when the
/// central stencil would cross `lo`.
double numeric_derivative(const ResidualFn& f, double x, double lo);

/// Newton iterations from x0 inside (lo, hi). A step at or below lo is
/// halved back toward lo; a step at or beyond hi ends with Escaped.
RootResult newton_iterate(const ResidualFn& f, double x0, double lo, double hi,
                          const SolverConfig& cfg,
                          const DerivativeFn& fprime = {});

/// Sign changes of f over `points` abscissae, spaced geometrically in the
/// distance from `origin` (origin < lo), between lo and hi.
std::vector<Bracket> scan_brackets(const ResidualFn& f, double origin,
                                   double lo, double hi, int points);

/// Newton inside a sign-change bracket, bisecting whenever the Newton step
/// would leave the current bracket.
RootResult bracketed_newton(const ResidualFn& f, Bracket b,
                            const SolverConfig& cfg,
                            const DerivativeFn& fprime = {});

/// Pure bisection (reference method; no derivative).
RootResult bisect(const ResidualFn& f, Bracket b, const SolverConfig& cfg);

/// Newton from x0; if it escapes or stalls and cfg.fallback is set, bisect
/// the first sign-change bracket found by a geometric scan of (lo, hi).
RootResult newton_solve(const ResidualFn& f, double x0, double lo, double hi,
                        const SolverConfig& cfg,
                        const DerivativeFn& fprime = {});

/// Convenience overload for plain scalar functions (scale taken as 1).
RootResult newton_solve(const std::function<double(double)>& f, double x0,
                        double lo, double hi, const SolverConfig& cfg,
                        const DerivativeFn& fprime = {});

const char* to_string(RootStatus status);

}  // namespace fnlse
