#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "stefan/specfun.hpp"
#include "support/oracles.hpp"

using Catch::Matchers::WithinAbs;

TEST_CASE("erf reference values", "[specfun]") {
  CHECK(stefan::erf(0.0) == 0.0);
  CHECK_THAT(stefan::erf(1.0), WithinAbs(0.842700792949715, 1e-14));
  CHECK(stefan::erf(-1.0) == -stefan::erf(1.0));
  CHECK(stefan::erf(6.0) <= 1.0);
  CHECK(stefan::erf(-6.0) >= -1.0);
}

TEST_CASE("erf rejects non-finite input", "[specfun]") {
  CHECK_THROWS_AS(stefan::erf(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(stefan::erf(INFINITY), std::domain_error);
}

TEST_CASE("erf oddness is exact on a grid", "[specfun]") {
  for (int i = 0; i <= 600; ++i) {
    const double x = 6.0 * i / 600.0;
    REQUIRE(stefan::erf(-x) == -stefan::erf(x));
  }
}

TEST_CASE("erf agrees with the series oracle", "[specfun]") {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 6.0 * (i + 0.5) / 1000.0;
    worst = std::max(worst, std::abs(stefan::erf(x) - testing_oracles::erf_series(x)));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("erf derivative matches 2/sqrt(pi) exp(-x^2)", "[specfun]") {
  const double h = 1e-5;
  for (int i = 0; i <= 40; ++i) {
    const double x = 4.0 * i / 40.0;
    const double numeric = (stefan::erf(x + h) - stefan::erf(x - h)) / (2.0 * h);
    const double exact = stefan::kTwoOverSqrtPi * std::exp(-x * x);
    REQUIRE_THAT(numeric, WithinAbs(exact, 1e-6));
  }
}

TEST_CASE("f_neumann values and monotonicity", "[specfun]") {
  CHECK(stefan::f_neumann(0.0) == 0.0);
  CHECK_THAT(stefan::f_neumann(0.62), WithinAbs(0.56404496374146998, 1e-12));
  CHECK_THAT(stefan::f_neumann(1.0), WithinAbs(2.2906982523032382, 1e-12));

  double prev = -1.0;
  for (int i = 0; i <= 1200; ++i) {
    const double x = 6.0 * i / 1200.0;
    const double v = stefan::f_neumann(x);
    REQUIRE(v > prev);
    prev = v;
  }
}

TEST_CASE("growth values and monotonicity", "[specfun]") {
  CHECK(stefan::growth(0.0) == 0.0);
  CHECK_THAT(stefan::growth(1.0), WithinAbs(2.718281828459045, 1e-14));
  CHECK_THAT(stefan::growth(1.5), WithinAbs(14.231603754537789, 1e-11));

  double prev = -1.0;
  for (int i = 0; i <= 1200; ++i) {
    const double x = 6.0 * i / 1200.0;
    const double v = stefan::growth(x);
    REQUIRE(v > prev);
    prev = v;
  }
}

TEST_CASE("erf monotone on a dense grid", "[specfun]") {
  // strictly increasing while the slope is representable; beyond x ~ 5 the
  // increment between neighbouring doubles drops under one ulp of 1
  double prev = -2.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = 5.0 * i / 1000.0;
    const double v = stefan::erf(x);
    REQUIRE(v > prev);
    prev = v;
  }
  for (int i = 0; i <= 200; ++i) {
    const double x = 5.0 + i / 200.0;
    const double v = stefan::erf(x);
    REQUIRE(v >= prev);
    prev = v;
  }
}

TEST_CASE("growth composites reject bad domains", "[specfun]") {
  CHECK_THROWS_AS(stefan::f_neumann(-0.1), std::domain_error);
  CHECK_THROWS_AS(stefan::growth(-1e-9), std::domain_error);
  CHECK_THROWS_AS(stefan::f_neumann(26.5), std::overflow_error);
  CHECK_THROWS_AS(stefan::growth(27.0), std::overflow_error);
  CHECK_THROWS_AS(stefan::growth(std::nan("")), std::domain_error);
  CHECK_NOTHROW(stefan::growth(26.0));  // guard is inclusive
}

TEST_CASE("erf_diff consistency", "[specfun]") {
  CHECK(stefan::erf_diff(0.7, 0.7) == 0.0);
  CHECK(stefan::erf_diff(0.9, 0.3) == -stefan::erf_diff(0.3, 0.9));
  CHECK_THAT(stefan::erf_diff(1.2, 0.4), WithinAbs(stefan::erf(1.2) - stefan::erf(0.4), 1e-15));

  // tiny-argument branch keeps relative accuracy where the direct
  // subtraction would cancel
  const double a = 2e-5, b = 1e-5;
  const double ratio = stefan::erf_diff(a, b) / (a - b);
  CHECK_THAT(ratio, WithinAbs(stefan::kTwoOverSqrtPi, 1e-9));
}

TEST_CASE("Accuracy defaults and validation", "[specfun]") {
  stefan::Accuracy acc;
  CHECK(acc.abs_tol == 1e-14);
  CHECK(acc.rel_tol == 1e-13);
  CHECK_NOTHROW(acc.validate());
  acc.abs_tol = 0.0;
  CHECK_THROWS_AS(acc.validate(), std::invalid_argument);
  acc = stefan::Accuracy{};
  acc.rel_tol = -1.0;
  CHECK_THROWS_AS(acc.validate(), std::invalid_argument);
}
