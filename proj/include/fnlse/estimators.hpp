#pragma once

// Parameter estimation for the Jelinski-Moranda model. Each estimator
// profiles phi out in closed form and leaves a one-dimensional estimating
// equation in N:
//
//   MLE     g(N) = sum 1/k_i - n / (N - sum (i-1) x_i / sum x_i)
//   LSE     h(N) = sum x_i/k_i^2 sum 1/k_i^2 - sum x_i/k_i sum 1/k_i^3
//   LogLSE  sum L_i / n * sum 1/k_i - sum L_i / k_i,  L_i = ln x_i + ln k_i
//   powLSE  f(N) = sum (x_i/k_i)^a sum k_i^-(2a+1)
//                  - sum x_i^a / k_i^(a+1) sum k_i^-2a
//
// with k_i = N - i + 1. All four are differences of two products that agree
// to leading order as N grows, so they are evaluated in a centred form where
// the common part cancels analytically.

#include <compare>
#include <span>
#include <string>

#include "fnlse/jm.hpp"
#include "fnlse/solver.hpp"

namespace fnlse {

class EstimatorKind {
 public:
  enum class Family { MLE, LSE, LogLSE, PowLSE };

  static EstimatorKind mle() { return EstimatorKind(Family::MLE, 1.0); }
  static EstimatorKind lse() { return EstimatorKind(Family::LSE, 1.0); }
  static EstimatorKind loglse() { return EstimatorKind(Family::LogLSE, 0.0); }
  /// Throws InvalidArgument for alpha == 0 or non-finite alpha.
  static EstimatorKind powlse(double alpha);

  Family family() const noexcept { return family_; }
  /// Power index; meaningful for PowLSE (1 for LSE).
  double alpha() const noexcept { return alpha_; }

  /// "MLE", "LSE", "LogLSE", "powLSE(-1.25)".
  std::string label() const;

  friend auto operator<=>(const EstimatorKind&, const EstimatorKind&) = default;

 private:
  EstimatorKind(Family f, double alpha) : family_(f), alpha_(alpha) {}
  Family family_;
  double alpha_;
};

enum class EstimateStatus {
  Converged,
  /// The estimating equation has no finite solution (or none reachable under
  /// RootPolicy::NewtonFromStart). params hold the N -> infinity limit,
  /// evaluated at N = n_upper.
  NoFiniteRoot,
  NotConverged,
};

struct EstimationResult {
  JmParams params;
  EstimatorKind kind;
  int iterations = 0;
  double residual = 0.0;  // |f(N-hat)| relative to its term scale
  bool converged = false;
  /// Minimised criterion at params: S for LSE, S_H for LogLSE (natural log)
  /// and powLSE, negative log-likelihood for MLE.
  double objective = 0.0;
  EstimateStatus status = EstimateStatus::NotConverged;
  int roots_found = 0;
};

// --- estimating equations (N must exceed n - 1) ---------------------------

double mle_root_fn(std::span<const double> x, double N);
double lse_root_fn(std::span<const double> x, double N);
double loglse_root_fn(std::span<const double> x, double N);
double powlse_root_fn(std::span<const double> x, double alpha, double N);

/// Root function of `kind` with its term scale. For LSE and powLSE the value
/// is divided by the largest-member factors so Newton sees an O(1) function;
/// the roots are unchanged. Scale is sum(a)*sum(b|d|) + sum(a|d|)*sum(b),
/// which stays positive at alpha = -1/2 where sum(b d) vanishes identically.
Residual root_residual(const EstimatorKind& kind, std::span<const double> x,
                       double N);

/// Closed-form phi given N.
double profile_phi(const EstimatorKind& kind, std::span<const double> x,
                   double N);

double objective(const EstimatorKind& kind, std::span<const double> x,
                 const JmParams& p);

/// Relative residuals of the two estimating equations (phi line and N line)
/// written in their textbook, uncentred form: |lhs - rhs| / max(|lhs|, |rhs|).
struct EquationResiduals {
  double phi_equation;
  double n_equation;
};
EquationResiduals verify_estimating_equations(const EstimatorKind& kind,
                                              std::span<const double> x,
                                              const JmParams& p);

// --- estimation ------------------------------------------------------------

/// Requires n >= 3 (InvalidArgument otherwise). Never throws for lack of a
/// root: that is reported through status / converged.
EstimationResult estimate(const EstimatorKind& kind, std::span<const double> x,
                          const SolverConfig& cfg = {});

EstimationResult estimate_mle(const FailureDataset& data,
                              const SolverConfig& cfg = {});
EstimationResult estimate_lse(const FailureDataset& data,
                              const SolverConfig& cfg = {});
EstimationResult estimate_loglse(const FailureDataset& data,
                                 const SolverConfig& cfg = {});
EstimationResult estimate_powlse(const FailureDataset& data, double alpha,
                                 const SolverConfig& cfg = {});

const char* to_string(EstimateStatus status);

}  // namespace fnlse
