#include "fnlse/jm.hpp"

#include <cmath>
#include <fmt/format.h>

#include "fnlse/errors.hpp"

namespace fnlse {

JmParams::JmParams(double N, double phi) : N(N), phi(phi) {
  if (!(N > 0) || !std::isfinite(N))
    throw InvalidArgument(fmt::format("N must be positive and finite, got {}", N));
  if (!(phi > 0) || !std::isfinite(phi))
    throw InvalidArgument(fmt::format("phi must be positive and finite, got {}", phi));
}

double hazard(const JmParams& p, std::size_t i) {
  if (i == 0) throw IndexError("failure index is 1-based");
  double remaining = p.N - static_cast<double>(i) + 1.0;
  if (!(remaining > 0))
    throw IndexError(fmt::format("no faults remain at index {} with N = {}", i, p.N));
  return p.phi * remaining;
}

double mtbf(const JmParams& p, std::size_t i) { return 1.0 / hazard(p, i); }

std::vector<double> mtbf_series(const JmParams& p, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) out.push_back(mtbf(p, i));
  return out;
}

FailureDataset::FailureDataset(std::string name, std::string unit,
                               std::vector<double> times)
    : name_(std::move(name)), unit_(std::move(unit)), times_(std::move(times)) {
  if (times_.empty()) throw InvalidArgument("failure dataset is empty");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!(times_[i] > 0) || !std::isfinite(times_[i]))
      throw DomainError(fmt::format("time {} at position {} is not positive", times_[i], i + 1));
  }
}

FailureDataset FailureDataset::prefix(std::size_t count) const {
  if (count == 0 || count > times_.size())
    throw IndexError(fmt::format("prefix of {} from {} values", count, times_.size()));
  return FailureDataset(name_, unit_,
                        std::vector<double>(times_.begin(), times_.begin() + count));
}

}  // namespace fnlse
