#include "fnlse/transforms.hpp"

#include <cmath>
#include <fmt/format.h>

#include "fnlse/errors.hpp"

namespace fnlse {

namespace {

bool is_small_integer(double a) {
  return a == std::floor(a) && std::abs(a) <= 16;
}

double ipow(double x, int k) {
  bool invert = k < 0;
  unsigned e = invert ? static_cast<unsigned>(-k) : static_cast<unsigned>(k);
  double r = 1.0;
  double b = x;
  while (e) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1;
  }
  return invert ? 1.0 / r : r;
}

double raise(double x, double a) {
  if (is_small_integer(a)) return ipow(x, static_cast<int>(a));
  return std::exp(a * std::log(x));
}

void require_positive(const Transform& t, double x) {
  if (!t.is_identity() && !(x > 0))
    throw DomainError(fmt::format("{} needs x > 0, got {}", t.describe(), x));
}

}  // namespace

Transform::Transform(Kind kind) : kind_(kind) {
  if (auto* l = std::get_if<Log>(&kind_)) {
    if (!(l->base > 0) || l->base == 1.0 || !std::isfinite(l->base))
      throw InvalidArgument(fmt::format("log base must be positive and != 1, got {}", l->base));
    inv_ln_base_ = 1.0 / std::log(l->base);
  } else if (auto* p = std::get_if<Power>(&kind_)) {
    if (p->alpha == 0.0 || !std::isfinite(p->alpha))
      throw InvalidArgument(fmt::format("power index must be finite and nonzero, got {}", p->alpha));
  }
}

Transform Transform::natural_log() { return Transform(Log{std::exp(1.0)}); }

double Transform::apply(double x) const {
  require_positive(*this, x);
  if (std::holds_alternative<Identity>(kind_)) return x;
  if (std::holds_alternative<Log>(kind_)) return std::log(x) * inv_ln_base_;
  return raise(x, std::get<Power>(kind_).alpha);
}

double Transform::derivative(double x) const {
  require_positive(*this, x);
  if (std::holds_alternative<Identity>(kind_)) return 1.0;
  if (std::holds_alternative<Log>(kind_)) return inv_ln_base_ / x;
  double a = std::get<Power>(kind_).alpha;
  return a * raise(x, a - 1.0);
}

std::string Transform::describe() const {
  if (std::holds_alternative<Identity>(kind_)) return "identity";
  if (auto* l = std::get_if<Log>(&kind_)) return fmt::format("log(base={})", l->base);
  return fmt::format("power(alpha={})", std::get<Power>(kind_).alpha);
}

void validate(const FnlseObjectiveInput& input) {
  if (input.observed.empty())
    throw InvalidArgument("objective input is empty");
  if (input.observed.size() != input.fitted.size())
    throw InvalidArgument(fmt::format("observed has {} values, fitted has {}",
                                      input.observed.size(), input.fitted.size()));
  for (std::size_t i = 0; i < input.observed.size(); ++i) {
    if (!(input.observed[i] > 0) || !(input.fitted[i] > 0))
      throw DomainError(fmt::format("non-positive value at position {}", i + 1));
  }
}

double fnlse_objective(const FnlseObjectiveInput& input) {
  validate(input);
  const Transform& h = input.transform;
  double s = 0.0;
  for (std::size_t i = 0; i < input.observed.size(); ++i) {
    double r = h.apply(input.observed[i]) - h.apply(input.fitted[i]);
    s += r * r;
  }
  return s;
}

std::vector<double> implied_weights(const FnlseObjectiveInput& input) {
  validate(input);
  const Transform& h = input.transform;
  std::vector<double> w(input.observed.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    double y = input.observed[i];
    double f = input.fitted[i];
    double slope;
    if (y == f) {
      slope = h.derivative(y);  // mean-value point collapses onto y
    } else {
      slope = (h.apply(y) - h.apply(f)) / (y - f);
    }
    w[i] = slope * slope;
  }
  return w;
}

}  // namespace fnlse
