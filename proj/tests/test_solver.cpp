#include <doctest.h>

#include <cmath>

#include "fnlse/errors.hpp"
#include "fnlse/solver.hpp"
#include "oracles.hpp"

using namespace fnlse;

TEST_CASE("linear and quadratic") {
  SolverConfig cfg;
  auto r = newton_solve([](double x) { return x - 5; }, 1, 0, 10, cfg);
  CHECK(r.converged);
  CHECK(r.root == doctest::Approx(5.0));
  auto q = newton_solve([](double x) { return x * x - 2; }, 1, 0, 10, cfg);
  CHECK(q.converged);
  CHECK(q.root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(q.residual <= cfg.root_tol);
}

TEST_CASE("analytic derivative is used when given") {
  SolverConfig cfg;
  int calls = 0;
  auto r = newton_solve([](double x) { return x * x * x - 8; }, 3, 0, 10, cfg,
                        [&](double x) {
                          ++calls;
                          return 3 * x * x;
                        });
  CHECK(r.converged);
  CHECK(r.root == doctest::Approx(2.0));
  CHECK(calls > 0);
}

TEST_CASE("newton escaping upward falls back to bisection") {
  // Newton from 0.5 on atan(x - 8) overshoots far past hi.
  SolverConfig cfg;
  ResidualFn f = [](double x) { return Residual{std::atan(x - 8), 1}; };
  auto raw = newton_iterate(f, 0.5, 0, 20, cfg);
  CHECK(raw.status == RootStatus::Escaped);
  auto r = newton_solve(f, 0.5, 0, 20, cfg);
  CHECK(r.converged);
  CHECK(r.used_bisection);
  CHECK(r.root == doctest::Approx(8.0).epsilon(1e-9));

  cfg.fallback = false;
  CHECK_FALSE(newton_solve(f, 0.5, 0, 20, cfg).converged);
}

TEST_CASE("low overshoot is pulled back inside the interval") {
  SolverConfig cfg;
  ResidualFn f = [](double x) { return Residual{std::log(x) - std::log(0.001), 1}; };
  auto r = newton_iterate(f, 5, 0, 10, cfg);
  CHECK(r.converged);
  CHECK(r.root == doctest::Approx(0.001).epsilon(1e-8));
}

TEST_CASE("no sign change") {
  SolverConfig cfg;
  ResidualFn f = [](double x) { return Residual{x * x + 1, 1}; };
  auto r = newton_solve(f, 1, -5, 5, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.status == RootStatus::NoSignChange);
  CHECK(scan_brackets(f, -6, -5, 5, 64).empty());
}

TEST_CASE("bracket scan finds every sign change") {
  ResidualFn f = [](double x) { return Residual{(x - 2) * (x - 30) * (x - 700), 1}; };
  auto b = scan_brackets(f, 0, 1, 1e4, 64);
  REQUIRE(b.size() == 3);
  SolverConfig cfg;
  double expect[] = {2, 30, 700};
  for (int k = 0; k < 3; ++k) {
    auto r = bracketed_newton(f, b[k], cfg);
    CHECK(r.root == doctest::Approx(expect[k]).epsilon(1e-10));
    auto s = bisect(f, b[k], cfg);
    CHECK(s.root == doctest::Approx(expect[k]).epsilon(1e-12));
  }
}

TEST_CASE("bracketed newton agrees with plain bisection") {
  SolverConfig cfg;
  auto g = [](double x) { return std::exp(-x) * 50 - 1 / x; };
  ResidualFn f = [&](double x) { return Residual{g(x), 1}; };
  for (const auto& b : oracle::dense_brackets(g, 0, 1e-3, 50)) {
    auto r = bracketed_newton(f, {b.lo, b.hi}, cfg);
    CHECK(r.root == doctest::Approx(oracle::bisection_root(g, b.lo, b.hi)).epsilon(1e-9));
  }
}

TEST_CASE("relative convergence uses the residual scale") {
  SolverConfig cfg;
  cfg.root_tol = 1e-6;
  ResidualFn f = [](double x) { return Residual{1e9 * (x - 3), 1e9 * (x + 3)}; };
  auto r = newton_iterate(f, 1, 0, 10, cfg);
  CHECK(r.converged);
  CHECK(r.residual <= 1e-6);
}

TEST_CASE("numeric derivative") {
  ResidualFn f = [](double x) { return Residual{x * x, 1}; };
  CHECK(numeric_derivative(f, 3, 0) == doctest::Approx(6.0).epsilon(1e-6));
  // One-sided next to the lower bound.
  CHECK(numeric_derivative(f, 1e-7, 0) == doctest::Approx(2e-7 + 1e-6).epsilon(1e-6));
}

TEST_CASE("config validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.root_tol = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  SolverConfig c2;
  CHECK_THROWS_AS(newton_solve([](double x) { return x; }, 20, 0, 10, c2), InvalidArgument);
}
