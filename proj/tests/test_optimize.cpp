#include <cmath>
#include <vector>

#include <doctest.h>

#include "otto/optimize.hpp"

using namespace otto::opt;

TEST_CASE("1-D: quadratic maximum to control tolerance") {
  ScalarProblem1D p;
  p.objective = [](double x) -> Value { return -(x - 0.3) * (x - 0.3); };
  const Result1D r = maximize_1d(p);
  CHECK(std::abs(r.x - 0.3) < 1e-12);
  CHECK(r.value <= 0.0);
  CHECK(!r.on_boundary);
  CHECK(r.iterations > 0);
}

TEST_CASE("1-D: engine high-T trade-off recovers the closed-form argmax") {
  // Objective (z - tau)(1 + tau - 2z)/z at tau = 1/2; frozen argmax
  // sqrt(3/8) = 0.61237243569579452.
  const double tau = 0.5;
  ScalarProblem1D p;
  p.objective = [tau](double z) -> Value {
    return (z - tau) * (1.0 + tau - 2.0 * z) / z;
  };
  p.lo = tau;
  p.hi = 1.0;
  const Result1D r = maximize_1d(p);
  CHECK(std::abs(r.x - 0.61237243569579452) < 1e-9);
}

TEST_CASE("1-D: monotone objective flags the boundary") {
  ScalarProblem1D p;
  p.objective = [](double x) -> Value { return x; };
  const Result1D r = maximize_1d(p);
  CHECK(r.on_boundary);
  const double step = 1.0 / (p.grid_points + 1);
  CHECK(std::abs(r.x - (1.0 - step)) < 2.0 * step);
}

TEST_CASE("1-D: determinism, dominance and the shrink bound") {
  ScalarProblem1D p;
  p.objective = [](double x) -> Value {
    return std::sin(5.0 * x) - 0.2 * x * x;
  };
  const Result1D a = maximize_1d(p);
  const Result1D b = maximize_1d(p);
  CHECK(a.x == b.x);
  CHECK(a.value == b.value);
  CHECK(a.iterations == b.iterations);

  // Refinement never loses to the scan grid.
  double grid_best = -1e300;
  for (int i = 0; i < p.grid_points; ++i) {
    const double x = (i + 1.0) / (p.grid_points + 1);
    grid_best = std::max(grid_best, *p.objective(x));
  }
  CHECK(a.value >= grid_best);

  // Golden-section bracket shrinks by ~0.618 per iteration.
  const double width0 = 2.0 / (p.grid_points + 1);
  const int bound = static_cast<int>(
                        std::ceil(std::log(p.tolerance / width0) /
                                  std::log(0.6180339887498949))) +
                    2;
  CHECK(a.iterations <= bound);
}

TEST_CASE("1-D: infeasible handling") {
  ScalarProblem1D p;
  p.objective = [](double) -> Value { return std::nullopt; };
  CHECK_THROWS_AS(maximize_1d(p), NumericError);

  // Feasible only on a window; the maximum sits inside it.
  ScalarProblem1D windowed;
  windowed.objective = [](double x) -> Value {
    if (x < 0.4 || x > 0.6) return std::nullopt;
    return -(x - 0.5) * (x - 0.5);
  };
  const Result1D r = maximize_1d(windowed);
  CHECK(std::abs(r.x - 0.5) < 1e-10);
}

TEST_CASE("1-D: argument validation") {
  ScalarProblem1D p;
  p.objective = [](double x) -> Value { return x; };
  p.lo = 1.0;
  p.hi = 0.0;
  CHECK_THROWS_AS(maximize_1d(p), std::invalid_argument);
  p.lo = 0.0;
  p.hi = 1.0;
  p.grid_points = 4;
  CHECK_THROWS_AS(maximize_1d(p), std::invalid_argument);
}

TEST_CASE("2-D: paraboloid") {
  ScalarProblem2D p;
  p.objective = [](double x, double y) -> Value {
    return -(x - 1.0) * (x - 1.0) - (y - 2.0) * (y - 2.0);
  };
  p.x_hi = 3.0;
  p.y_hi = 3.0;
  const Result2D r = maximize_2d(p);
  CHECK(std::abs(r.x - 1.0) < 1e-8);
  CHECK(std::abs(r.y - 2.0) < 1e-8);
  CHECK(r.iterations <= 500);
}

TEST_CASE("2-D: low-temperature work objective hits the closed-form controls") {
  // (w2 - w1)(exp(-w2) - exp(-2 w1)) peaks at (1.1931471805599453,
  // 1.6931471805599453) for beta = (2, 1).
  ScalarProblem2D p;
  p.objective = [](double w1, double w2) -> Value {
    return (w2 - w1) * (std::exp(-w2) - std::exp(-2.0 * w1));
  };
  p.x_hi = 50.0;
  p.y_hi = 50.0;
  const Result2D r = maximize_2d(p);
  CHECK(std::abs(r.x - 1.1931471805599453) / 1.1931471805599453 < 1e-8);
  CHECK(std::abs(r.y - 1.6931471805599453) / 1.6931471805599453 < 1e-8);
  CHECK(r.iterations <= 500);

  const Result2D again = maximize_2d(p);
  CHECK(again.x == r.x);
  CHECK(again.y == r.y);
}

TEST_CASE("2-D: rejects degenerate problems") {
  ScalarProblem2D p;
  p.objective = [](double, double) -> Value { return std::nullopt; };
  CHECK_THROWS_AS(maximize_2d(p), NumericError);
  p.x_lo = 2.0;
  p.x_hi = 1.0;
  CHECK_THROWS_AS(maximize_2d(p), std::invalid_argument);
}

TEST_CASE("series fit: exact polynomial") {
  const SeriesFit fit = fit_series(
      [](double x) { return x / 2.0 + x * x / 8.0; }, 3, 0.05, 0.0);
  REQUIRE(fit.coefficients.size() == 4);
  CHECK(fit.coefficients[0] == 0.0);
  CHECK(std::abs(fit.coefficients[1] - 0.5) < 1e-10);
  CHECK(std::abs(fit.coefficients[2] - 0.125) < 1e-8);
  CHECK(std::abs(fit.coefficients[3]) < 1e-6);
  CHECK(fit.residual < 1e-15);
  CHECK(!fit.ill_conditioned);
}

TEST_CASE("series fit: nonzero limit and validation") {
  const SeriesFit fit = fit_series(
      [](double x) { return 1.0 + 3.0 * x; }, 1, 0.1, 1.0);
  CHECK(fit.coefficients[0] == 1.0);
  CHECK(std::abs(fit.coefficients[1] - 3.0) < 1e-10);
  CHECK_THROWS_AS(fit_series([](double x) { return x; }, 5, 0.1, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_series([](double x) { return x; }, 1, -0.1, 0.0),
                  std::invalid_argument);
}

TEST_CASE("asymptote fit: exact linear-plus-inverse model") {
  const AsymptoteFit fit = fit_asymptote(
      [](double s) { return 2.0 * s / 3.0 + 1.0 / 18.0 - 17.0 / (216.0 * s); },
      0.01);
  CHECK(std::abs(fit.slope - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(fit.intercept - 1.0 / 18.0) < 1e-10);
  CHECK(std::abs(fit.inv_coeff + 17.0 / 216.0) < 1e-8);
  CHECK(fit.residual < 1e-12);
}
