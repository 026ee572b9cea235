#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "stefan/dirichlet.hpp"
#include "stefan/robin.hpp"

// gamma -> infinity behaviour: lambda_gamma increases to the Dirichlet
// lambda and y_gamma converges pointwise to y.

namespace stefan {

struct ConvergenceReport {
  std::vector<double> gamma_grid;
  std::vector<double> lambdas;      // lambda_gamma per grid entry
  double lambda_limit = 0.0;        // Dirichlet lambda
  std::vector<double> sup_errors;   // max |y_gamma - y| on the shared eta grid
  bool monotone = false;            // lambdas strictly increasing
  bool bounded = false;             // every lambda_gamma < lambda_limit
};

// Solves the Dirichlet problem once and the Robin problem per gamma, then
// compares profiles on eta_samples uniform points of [0, lambda], extending
// y_gamma by zero beyond lambda_gamma.
inline ConvergenceReport converge_study(const DimensionlessConfig& config,
                                        std::span<const double> gamma_grid, int eta_samples,
                                        const RootConfig& cfg = {}) {
  if (gamma_grid.empty())
    throw std::invalid_argument("converge_study: gamma_grid must not be empty");
  for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
    if (!std::isfinite(gamma_grid[i]) || !(gamma_grid[i] > 0.0))
      throw std::invalid_argument("converge_study: gamma values must be positive");
    if (i > 0 && !(gamma_grid[i] > gamma_grid[i - 1]))
      throw std::invalid_argument("converge_study: gamma_grid must be strictly ascending");
  }
  if (eta_samples < 2) throw std::invalid_argument("converge_study: eta_samples must be >= 2");

  DimensionlessConfig base = config;
  base.gamma.reset();
  const DirichletSolution limit = solve_lambda(base, cfg);

  ConvergenceReport report;
  report.gamma_grid.assign(gamma_grid.begin(), gamma_grid.end());
  report.lambda_limit = limit.lambda;
  report.lambdas.reserve(gamma_grid.size());
  report.sup_errors.reserve(gamma_grid.size());

  for (double gamma : gamma_grid) {
    DimensionlessConfig robin_config = base;
    robin_config.gamma = gamma;
    try {
      const RobinSolution sol = solve_lambda_gamma(robin_config, cfg);
      report.lambdas.push_back(sol.lambda_gamma);
      double sup = 0.0;
      for (int i = 0; i < eta_samples; ++i) {
        const double eta = limit.lambda * (static_cast<double>(i) / (eta_samples - 1));
        const double y_lim = profile_y(limit, eta, cfg);
        const double y_gam =
            (eta <= sol.lambda_gamma) ? profile_y_gamma(sol, eta, cfg) : 0.0;
        sup = std::max(sup, std::abs(y_gam - y_lim));
      }
      report.sup_errors.push_back(sup);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "converge_study: gamma=" << gamma << ": " << e.what();
      throw std::runtime_error(msg.str());
    }
  }

  report.monotone = true;
  for (std::size_t i = 1; i < report.lambdas.size(); ++i)
    if (!(report.lambdas[i] > report.lambdas[i - 1])) report.monotone = false;
  report.bounded = std::all_of(report.lambdas.begin(), report.lambdas.end(),
                               [&](double l) { return l < report.lambda_limit; });
  return report;
}

}  // namespace stefan
