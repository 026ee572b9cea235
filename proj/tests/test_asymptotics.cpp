#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include "stefan/asymptotics.hpp"

using Catch::Matchers::WithinAbs;
using stefan::DimensionlessConfig;

namespace {

DimensionlessConfig base_config(double ste, double delta, double p) {
  DimensionlessConfig cfg;
  cfg.ste = ste;
  cfg.delta = delta;
  cfg.p = p;
  return cfg;
}

}  // namespace

TEST_CASE("converge_study reproduces the gamma sweep", "[asymptotics]") {
  const std::array<double, 4> gammas = {1.0, 25.0, 50.0, 100.0};
  const auto report = stefan::converge_study(base_config(0.5, 5.0, 1.0), gammas, 101);

  REQUIRE(report.lambdas.size() == 4);
  CHECK(report.monotone);
  CHECK(report.bounded);
  CHECK_THAT(report.lambda_limit, WithinAbs(0.76431259391190784, 5e-12));

  // mpmath-frozen lambda_gamma values
  CHECK_THAT(report.lambdas[0], WithinAbs(0.20758287889057231, 5e-12));
  CHECK_THAT(report.lambdas[1], WithinAbs(0.67978465566731792, 5e-12));
  CHECK_THAT(report.lambdas[2], WithinAbs(0.71838076712153991, 5e-12));
  CHECK_THAT(report.lambdas[3], WithinAbs(0.74024630837049297, 5e-12));

  // sup errors on the same 101-point grid, frozen from the oracle run
  CHECK_THAT(report.sup_errors[0], WithinAbs(0.86689, 1e-4));
  CHECK_THAT(report.sup_errors[1], WithinAbs(0.18658, 1e-4));
  CHECK_THAT(report.sup_errors[2], WithinAbs(0.11313, 1e-4));
  CHECK_THAT(report.sup_errors[3], WithinAbs(0.061787, 1e-4));
  for (std::size_t i = 1; i < report.sup_errors.size(); ++i)
    CHECK(report.sup_errors[i] <= report.sup_errors[i - 1]);
}

TEST_CASE("lambda gap shrinks for the constant-coefficient problem", "[asymptotics]") {
  const std::array<double, 3> gammas = {10.0, 100.0, 1000.0};
  const auto report = stefan::converge_study(base_config(1.0, 0.0, 1.0), gammas, 65);
  REQUIRE(report.lambdas.size() == 3);
  double prev_gap = 1e9;
  for (double l : report.lambdas) {
    const double gap = report.lambda_limit - l;
    REQUIRE(gap > 0.0);
    REQUIRE(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK_THAT(report.lambda_limit - report.lambdas[0], WithinAbs(0.042155, 1e-5));
  CHECK_THAT(report.lambda_limit - report.lambdas[2], WithinAbs(0.00044479, 1e-6));
}

TEST_CASE("single large gamma drives the sup error below 1e-3", "[asymptotics]") {
  const std::array<double, 1> gammas = {1e6};
  const auto report = stefan::converge_study(base_config(0.5, 5.0, 1.0), gammas, 101);
  REQUIRE(report.sup_errors.size() == 1);
  CHECK(report.sup_errors[0] <= 1e-3);
  CHECK(report.monotone);
  CHECK(report.bounded);
}

TEST_CASE("pointwise gap decreases in gamma at fixed eta", "[asymptotics]") {
  const auto base = base_config(0.5, 5.0, 1.0);
  const auto limit = stefan::solve_lambda(base);
  for (double frac : {0.0, 0.25, 0.5, 0.75}) {
    const double eta = frac * limit.lambda;
    double prev = 2.0;
    for (double gamma : {1.0, 25.0, 50.0, 100.0}) {
      DimensionlessConfig cfg = base;
      cfg.gamma = gamma;
      const auto sol = stefan::solve_lambda_gamma(cfg);
      const double yg =
          (eta <= sol.lambda_gamma) ? stefan::profile_y_gamma(sol, eta) : 0.0;
      const double gap = std::abs(yg - stefan::profile_y(limit, eta));
      REQUIRE(gap < prev);
      prev = gap;
    }
  }
}

TEST_CASE("gamma doubling drives the lambda gap below 1e-5", "[asymptotics]") {
  const auto base = base_config(0.5, 5.0, 1.0);
  const auto limit = stefan::solve_lambda(base);
  double prev_gap = 1e9;
  double gap = 0.0;
  for (int k = 0; k <= 20; ++k) {
    DimensionlessConfig cfg = base;
    cfg.gamma = std::pow(2.0, k);
    gap = limit.lambda - stefan::solve_lambda_gamma(cfg).lambda_gamma;
    REQUIRE(gap > 0.0);
    REQUIRE(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(gap < 1e-5);
}

TEST_CASE("converge_study input validation", "[asymptotics]") {
  const auto base = base_config(0.5, 5.0, 1.0);
  CHECK_THROWS_AS(stefan::converge_study(base, std::array<double, 0>{}, 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(stefan::converge_study(base, std::array<double, 2>{5.0, 5.0}, 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(stefan::converge_study(base, std::array<double, 2>{-1.0, 5.0}, 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(stefan::converge_study(base, std::array<double, 1>{5.0}, 1),
                  std::invalid_argument);
}
