#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "fnlse/errors.hpp"
#include "fnlse/transforms.hpp"

using namespace fnlse;

TEST_CASE("apply") {
  CHECK(Transform::identity().apply(7.5) == 7.5);
  CHECK(Transform::power(1).apply(3.0) == 3.0);
  CHECK(Transform::natural_log().apply(1.0) == 0.0);
  CHECK(Transform::power(-2).apply(2.0) == 0.25);
  CHECK(Transform::log(10).apply(1000.0) == doctest::Approx(3.0));
  CHECK(Transform::power(0.5).apply(9.0) == doctest::Approx(3.0));
}

TEST_CASE("derivative") {
  CHECK(Transform::identity().derivative(42.0) == 1.0);
  CHECK(Transform::natural_log().derivative(2.0) == doctest::Approx(0.5));
  CHECK(Transform::power(2).derivative(3.0) == 6.0);
  CHECK(Transform::power(-0.5).derivative(4.0) == doctest::Approx(-0.5 / 8));
}

TEST_CASE("domain and invariants") {
  CHECK_THROWS_AS(Transform::natural_log().apply(0.0), DomainError);
  CHECK_THROWS_AS(Transform::power(2).apply(-1.0), DomainError);
  CHECK_THROWS_AS(Transform::power(0.5).derivative(0.0), DomainError);
  CHECK(Transform::identity().apply(-3.0) == -3.0);
  CHECK_THROWS_AS(Transform::power(0), InvalidArgument);
  CHECK_THROWS_AS(Transform::log(1), InvalidArgument);
  CHECK_THROWS_AS(Transform::log(-2), InvalidArgument);
  CHECK_THROWS_AS(Transform::power(std::numeric_limits<double>::infinity()), InvalidArgument);
}

TEST_CASE("objective") {
  std::vector<double> a{2.0, 3.0}, one{1.0};
  std::vector<double> two{2.0};
  CHECK(fnlse_objective({a, a, Transform::power(-1.5)}) == 0.0);
  CHECK(fnlse_objective({two, one, Transform::power(2)}) == 9.0);
  std::vector<double> obs{std::exp(2.0), std::exp(1.0)}, fit{std::exp(1.0), std::exp(1.0)};
  CHECK(fnlse_objective({obs, fit, Transform::natural_log()}) == doctest::Approx(1.0));

  std::vector<double> empty;
  CHECK_THROWS_AS(fnlse_objective({empty, empty, Transform::identity()}), InvalidArgument);
  CHECK_THROWS_AS(fnlse_objective({a, one, Transform::identity()}), InvalidArgument);
  std::vector<double> bad{1.0, -1.0};
  CHECK_THROWS_AS(fnlse_objective({bad, a, Transform::identity()}), DomainError);
}

TEST_CASE("implied weights") {
  std::vector<double> one{1.0}, two{2.0}, three{3.0};
  CHECK(implied_weights({two, one, Transform::power(2)}) == std::vector<double>{9.0});
  CHECK(implied_weights({three, three, Transform::power(2)}) == std::vector<double>{36.0});
  std::vector<double> y{1, 5, 9}, f{2, 5, 4};
  for (double w : implied_weights({y, f, Transform::identity()})) CHECK(w == 1.0);
}

TEST_CASE("power 1 and identity agree exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 1000);
  for (int k = 0; k < 200; ++k) {
    std::vector<double> y(5), f(5);
    for (auto& v : y) v = u(rng);
    for (auto& v : f) v = u(rng);
    CHECK(fnlse_objective({y, f, Transform::power(1)}) ==
          fnlse_objective({y, f, Transform::identity()}));
  }
}

TEST_CASE("log base only rescales the objective") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 1000);
  for (double base : {2.0, 10.0, 0.5}) {
    std::vector<double> y(6), f(6);
    for (auto& v : y) v = u(rng);
    for (auto& v : f) v = u(rng);
    double ln = fnlse_objective({y, f, Transform::natural_log()});
    double lb = fnlse_objective({y, f, Transform::log(base)});
    double factor = 1 / (std::log(base) * std::log(base));
    CHECK(lb == doctest::Approx(ln * factor).epsilon(1e-12));
  }
}

TEST_CASE("objective is zero only on a perfect fit") {
  std::vector<double> y{1, 2, 3}, f{1, 2, 3.0000001};
  CHECK(fnlse_objective({y, f, Transform::natural_log()}) > 0);
  CHECK(fnlse_objective({y, y, Transform::natural_log()}) == 0);
}
