#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stefan/dirichlet.hpp"
#include "stefan/model.hpp"
#include "stefan/rootfind.hpp"
#include "stefan/specfun.hpp"

// Convective (Robin) condition at the fixed face. The front coefficient
// lambda_gamma is the unique root of
//   F(beta_gamma(x)) = sqrt(pi)/Ste f(x)   on (0, lambda0),
// with beta_gamma(x) = 1 - 2 x exp(x^2)/(gamma Ste) and lambda0 its zero.
// The sqrt(pi)/Ste factor on the f side is forced by the derivation chain
// (differentiate the functional identity at eta = 0 and eliminate y'(0)
// with the convective condition); it is also what makes beta_gamma(lambda_gamma)
// equal the surface value and lambda_gamma increase to the Dirichlet lambda
// as gamma grows.

namespace stefan {

// beta_gamma; decreasing from 1 to 0 on [0, lambda0]. Values a hair below
// zero (root-finding noise at lambda0) clamp to 0; anything clearly negative
// is outside the admissible range.
inline double beta(double x, double gamma, double ste) {
  if (!(gamma > 0.0) || !(ste > 0.0))
    throw std::invalid_argument("beta: gamma and ste must be positive");
  if (!std::isfinite(x) || x < 0.0) throw std::domain_error("beta: x must be >= 0");
  const double b = 1.0 - 2.0 * growth(x) / (gamma * ste);
  if (b < -1e-9) throw std::domain_error("beta: x beyond lambda0 (beta < 0)");
  return std::max(b, 0.0);
}

// lambda0 = beta_gamma^{-1}(0), i.e. the root of x exp(x^2) = gamma Ste / 2.
// Newton-polished so the value keeps full relative accuracy when gamma Ste
// is tiny and the admissible interval collapses.
inline double lambda0(double gamma, double ste, const RootConfig& cfg = {}) {
  if (!(gamma > 0.0) || !(ste > 0.0))
    throw std::invalid_argument("lambda0: gamma and ste must be positive");
  const double target = 0.5 * gamma * ste;
  const auto bracket = expand_upward([](double x) { return growth(x); }, target, 0.0, cfg);
  double x = solve_bracketed([&](double v) { return growth(v) - target; }, bracket.first,
                             bracket.second, cfg)
                 .root;
  for (int k = 0; k < 3; ++k) {
    const double e = std::exp(x * x);
    const double next = x - (x * e - target) / ((1.0 + 2.0 * x * x) * e);
    if (!std::isfinite(next) || !(next > 0.0)) break;
    x = next;
  }
  return x;
}

struct RobinSolution {
  DimensionlessConfig config;
  double lambda_gamma = 0.0;
  double lambda0 = 0.0;
  double surface_y0 = 0.0;  // y_gamma(0) = beta_gamma(lambda_gamma)
  RootResult solve_report;
};

// Solves the front equation in units of lambda0 (u = x / lambda0), which
// keeps relative accuracy when gamma is tiny and lambda_gamma hugs lambda0.
// H(0) = F(1) > 0 and H(lambda0) = -sqrt(pi)/Ste f(lambda0) < 0, so the
// fallback bracket [0, lambda0] always carries a sign change.
inline RobinSolution solve_lambda_gamma(const DimensionlessConfig& config,
                                        const RootConfig& cfg = {}) {
  config.validate();
  if (!config.gamma)
    throw std::invalid_argument("solve_lambda_gamma: config.gamma is required");
  const double gamma = *config.gamma;
  const double ste = config.ste;
  const double l0 = lambda0(gamma, ste, cfg);

  auto equation = [&](double u) {
    const double x = u * l0;
    return big_f(beta(x, gamma, ste), config.delta, config.p) -
           kSqrtPi / ste * f_neumann(x);
  };

  double ulo = 1e-15, uhi = 1.0 - 1e-15;
  if (equation(ulo) * equation(uhi) > 0.0) {
    ulo = 0.0;
    uhi = 1.0;
  }
  RootResult report = solve_bracketed(equation, ulo, uhi, cfg);

  RobinSolution sol;
  sol.config = config;
  sol.lambda_gamma = report.root * l0;
  sol.lambda0 = l0;
  sol.surface_y0 = beta(sol.lambda_gamma, gamma, ste);
  report.root *= l0;
  report.bracket_lo *= l0;
  report.bracket_hi *= l0;
  sol.solve_report = report;
  return sol;
}

// Same functional form as big_g with lambda_gamma in place of lambda.
inline double big_g_gamma(double eta, double lambda_gamma, double ste) {
  return big_g(eta, lambda_gamma, ste);
}

inline double profile_y_gamma(const RobinSolution& sol, double eta,
                              const RootConfig& cfg = {}) {
  const double z = big_g_gamma(eta, sol.lambda_gamma, sol.config.ste);
  return inv_f(z, sol.config.delta, sol.config.p, cfg);
}

// Residual of the convective condition (1 + delta y^p(0)) y'(0) = gamma (y(0) - 1)
// with y'(0) from a one-sided second-order stencil of step grid_h (clamped
// so the stencil stays inside [0, lambda_gamma]).
inline double convective_residual(const RobinSolution& sol, double grid_h,
                                  const RootConfig& cfg = {}) {
  if (!(grid_h > 0.0)) throw std::invalid_argument("convective_residual: grid_h must be > 0");
  const double h = std::min(grid_h, 0.25 * sol.lambda_gamma);
  auto y = [&](double eta) { return profile_y_gamma(sol, eta, cfg); };
  const double y0 = y(0.0);
  const double yp0 = (-3.0 * y0 + 4.0 * y(h) - y(2.0 * h)) / (2.0 * h);
  const double gamma = *sol.config.gamma;
  return std::abs((1.0 + sol.config.delta * std::pow(y0, sol.config.p)) * yp0 -
                  gamma * (y0 - 1.0));
}

inline double temperature_gamma(const RobinSolution& sol, const MaterialSpec& spec, double x,
                                double t, const RootConfig& cfg = {}) {
  if (!std::isfinite(t) || !(t > 0.0))
    throw std::domain_error("temperature_gamma: t must be > 0");
  if (!std::isfinite(x) || x < 0.0)
    throw std::domain_error("temperature_gamma: x must be >= 0");
  const double a = std::sqrt(spec.k0 / (spec.rho * spec.c0));
  const double eta = x / (2.0 * a * std::sqrt(t));
  if (eta > sol.lambda_gamma + detail::eta_slack(sol.lambda_gamma))
    throw std::domain_error("temperature_gamma: x beyond the front s(t)");
  return (spec.T0 - spec.Tf) * profile_y_gamma(sol, std::min(eta, sol.lambda_gamma), cfg) +
         spec.Tf;
}

inline double front_gamma(const RobinSolution& sol, const MaterialSpec& spec, double t) {
  if (!std::isfinite(t) || t < 0.0) throw std::domain_error("front_gamma: t must be >= 0");
  const double a = std::sqrt(spec.k0 / (spec.rho * spec.c0));
  return 2.0 * a * sol.lambda_gamma * std::sqrt(t);
}

inline Profile sample_profile_gamma(const RobinSolution& sol, int n,
                                    const RootConfig& cfg = {}) {
  if (n < 2) throw std::invalid_argument("sample_profile_gamma: need at least 2 nodes");
  Profile prof;
  prof.etas.resize(n);
  prof.values.resize(n);
  for (int i = 0; i < n; ++i) {
    const double eta = sol.lambda_gamma * (static_cast<double>(i) / (n - 1));
    prof.etas[i] = eta;
    prof.values[i] = profile_y_gamma(sol, eta, cfg);
  }
  return prof;
}

}  // namespace stefan
