#pragma once

// The H-family of monotone transforms and the function-transformed least
// squares objective  S_H = sum_i (H(y_i) - H(f_i))^2.

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fnlse {

struct Identity {};

/// log_base(x); base > 0 and base != 1.
struct Log {
  double base;
};

/// x^alpha; alpha != 0.
struct Power {
  double alpha;
};

class Transform {
 public:
  using Kind = std::variant<Identity, Log, Power>;

  /// Throws InvalidArgument if the kind's parameters are out of range.
  explicit Transform(Kind kind);

  static Transform identity() { return Transform(Identity{}); }
  static Transform natural_log();
  static Transform log(double base) { return Transform(Log{base}); }
  static Transform power(double alpha) { return Transform(Power{alpha}); }

  const Kind& kind() const noexcept { return kind_; }
  bool is_identity() const noexcept {
    return std::holds_alternative<Identity>(kind_);
  }

  /// H(x). Log and Power require x > 0 (DomainError otherwise).
  double apply(double x) const;

  /// H'(x), same domain as apply().
  double derivative(double x) const;

  std::string describe() const;

 private:
  Kind kind_;
  double inv_ln_base_ = 0.0;  // Log only
};

/// Observed values y_i against model values f(x_i, beta) under a transform.
/// Both sequences must be non-empty, of equal length and strictly positive.
struct FnlseObjectiveInput {
  std::span<const double> observed;
  std::span<const double> fitted;
  Transform transform;
};

/// Throws InvalidArgument on empty / mismatched input, DomainError on
/// non-positive entries.
void validate(const FnlseObjectiveInput& input);

double fnlse_objective(const FnlseObjectiveInput& input);

/// Weights w_i making  sum_i w_i (y_i - f_i)^2  equal fnlse_objective().
/// w_i = ((H(y_i) - H(f_i)) / (y_i - f_i))^2, or H'(y_i)^2 where y_i == f_i.
std::vector<double> implied_weights(const FnlseObjectiveInput& input);

}  // namespace fnlse
