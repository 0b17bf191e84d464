#pragma once

// Jelinski-Moranda model: N initial faults, each removed on failure, hazard
// phi * (N - i + 1) during the i-th inter-failure interval.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fnlse {

/// (N, phi). N is a continuous unknown; validity against a particular
/// dataset (N > n - 1) is checked by the estimators.
struct JmParams {
  double N;
  double phi;

  JmParams(double N, double phi);

  friend bool operator==(const JmParams&, const JmParams&) = default;
};

/// phi * (N - i + 1) for 1-based failure index i. IndexError if i == 0 or
/// the fault count remaining is not positive.
double hazard(const JmParams& p, std::size_t i);

/// Expected time to the i-th failure, 1 / hazard(p, i).
double mtbf(const JmParams& p, std::size_t i);

/// mtbf(p, 1..count).
std::vector<double> mtbf_series(const JmParams& p, std::size_t count);

/// Ordered times between failures x_1..x_n, all > 0.
class FailureDataset {
 public:
  /// Throws InvalidArgument when empty, DomainError on a non-positive time.
  FailureDataset(std::string name, std::string unit, std::vector<double> times);

  const std::string& name() const noexcept { return name_; }
  const std::string& unit() const noexcept { return unit_; }
  std::span<const double> times() const noexcept { return times_; }
  std::size_t size() const noexcept { return times_.size(); }
  double operator[](std::size_t i) const { return times_[i]; }

  /// The first `count` observations as a new dataset.
  FailureDataset prefix(std::size_t count) const;

 private:
  std::string name_;
  std::string unit_;
  std::vector<double> times_;
};

}  // namespace fnlse
