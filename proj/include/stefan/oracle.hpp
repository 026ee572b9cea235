#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "stefan/dirichlet.hpp"
#include "stefan/model.hpp"
#include "stefan/rootfind.hpp"

// Independent verification path: integrate the similarity ODE
//   2 eta (1 + delta y^p) y' + [(1 + delta y^p) y']' = 0
// directly by backward shooting from the front and compare with the
// functional-formulation solutions. Nothing here touches erf or the F/G
// machinery, so agreement is a genuine cross-check.

namespace stefan {

struct IntegrationResult {
  double y0 = 0.0;       // y at eta = 0
  double yprime0 = 0.0;  // y' at eta = 0
  Profile profile;       // trace on the integrator grid, etas ascending
};

struct ShootingResult {
  double lambda_shoot = 0.0;
  Profile profile;
  double boundary_mismatch = 0.0;  // |y(0)-1| or the convective-condition gap
  int steps = 0;
};

// Integrates the first-order system y' = v/(1 + delta y^p), v' = -2 eta v
// from eta = lambda down to 0 with classical fixed-step RK4, starting from
// the terminal data y(lambda) = 0, v(lambda) = (1 + delta 0^p)(-2 lambda/Ste).
// y is clamped at 0 inside the coefficient so fractional powers stay in
// domain when the state dips below zero by rounding.
inline IntegrationResult integrate_backward(double lambda_guess,
                                            const DimensionlessConfig& config, int steps) {
  if (!std::isfinite(lambda_guess) || !(lambda_guess > 0.0))
    throw std::invalid_argument("integrate_backward: lambda_guess must be > 0");
  if (steps < 100) throw std::invalid_argument("integrate_backward: steps must be >= 100");
  config.validate();

  const double delta = config.delta;
  const double p = config.p;
  auto coeff = [&](double y) { return 1.0 + delta * std::pow(std::max(y, 0.0), p); };
  auto fy = [&](double y, double v) { return v / coeff(y); };
  auto fv = [&](double eta, double v) { return -2.0 * eta * v; };

  const double h = lambda_guess / steps;
  double y = 0.0;
  double v = coeff(0.0) * (-2.0 * lambda_guess / config.ste);

  IntegrationResult result;
  result.profile.etas.resize(steps + 1);
  result.profile.values.resize(steps + 1);
  result.profile.etas[steps] = lambda_guess;
  result.profile.values[steps] = 0.0;

  for (int k = 0; k < steps; ++k) {
    const double eta = lambda_guess * (static_cast<double>(steps - k) / steps);
    const double k1y = fy(y, v), k1v = fv(eta, v);
    const double k2y = fy(y - 0.5 * h * k1y, v - 0.5 * h * k1v),
                 k2v = fv(eta - 0.5 * h, v - 0.5 * h * k1v);
    const double k3y = fy(y - 0.5 * h * k2y, v - 0.5 * h * k2v),
                 k3v = fv(eta - 0.5 * h, v - 0.5 * h * k2v);
    const double k4y = fy(y - h * k3y, v - h * k3v), k4v = fv(eta - h, v - h * k3v);
    y -= h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    v -= h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!std::isfinite(y) || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "integrate_backward: non-finite state near eta=" << eta - h;
      throw std::runtime_error(msg.str());
    }
    const int idx = steps - k - 1;
    result.profile.etas[idx] = lambda_guess * (static_cast<double>(idx) / steps);
    result.profile.values[idx] = y;
  }

  result.y0 = y;
  result.yprime0 = v / coeff(y);
  return result;
}

// Root-finds lambda on the scalar shot mismatch. The bracket is seeded
// around lambda_hint when given (widening geometrically until the signs
// differ), else [1e-6, 3]. A bracket failure means the two solution methods
// disagree and is surfaced as an error.
inline ShootingResult shoot(const DimensionlessConfig& config, BoundaryKind boundary,
                            const RootConfig& cfg = {}, int steps = 10000,
                            std::optional<double> lambda_hint = std::nullopt) {
  config.validate();
  if (boundary == BoundaryKind::robin && !config.gamma)
    throw std::invalid_argument("shoot: config.gamma is required for the Robin boundary");

  auto mismatch = [&](double lam) {
    const IntegrationResult r = integrate_backward(lam, config, steps);
    if (boundary == BoundaryKind::dirichlet) return r.y0 - 1.0;
    const double v0 =
        (1.0 + config.delta * std::pow(std::max(r.y0, 0.0), config.p)) * r.yprime0;
    return v0 - *config.gamma * (r.y0 - 1.0);
  };

  double lo = 1e-6, hi = 3.0;
  if (lambda_hint) {
    const double center = *lambda_hint;
    double width = 0.05 * center;
    lo = std::max(center - width, 1e-12);
    hi = center + width;
    for (int k = 0; k < 60 && mismatch(lo) * mismatch(hi) > 0.0; ++k) {
      width *= cfg.bracket_growth;
      lo = std::max(center - width, 1e-12);
      hi = center + width;
    }
  }
  if (mismatch(lo) * mismatch(hi) > 0.0)
    throw bracket_error("shoot: no sign change in the lambda bracket (methods disagree)");

  const RootResult report = solve_bracketed(mismatch, lo, hi, cfg);
  IntegrationResult final_run = integrate_backward(report.root, config, steps);

  ShootingResult result;
  result.lambda_shoot = report.root;
  result.boundary_mismatch =
      (boundary == BoundaryKind::dirichlet)
          ? std::abs(final_run.y0 - 1.0)
          : std::abs((1.0 + config.delta * std::pow(std::max(final_run.y0, 0.0), config.p)) *
                         final_run.yprime0 -
                     *config.gamma * (final_run.y0 - 1.0));
  result.profile = std::move(final_run.profile);
  result.steps = steps;
  return result;
}

// Max relative deviation of Q(eta) = (1 + delta y^p) y' exp(eta^2) from its
// value at lambda/2, over interior grid nodes; Q is constant for an exact
// solution. Derivatives by central differences with h = lambda/(10 N).
inline double ode_residual(const std::function<double(double)>& y_eval, double lambda,
                           const DimensionlessConfig& config, int grid_points) {
  if (grid_points < 3) throw std::invalid_argument("ode_residual: grid_points must be >= 3");
  const double h = lambda / (10.0 * grid_points);
  auto flux = [&](double eta) {
    const double yp = (y_eval(eta + h) - y_eval(eta - h)) / (2.0 * h);
    const double y = y_eval(eta);
    return (1.0 + config.delta * std::pow(std::max(y, 0.0), config.p)) * yp *
           std::exp(eta * eta);
  };
  const double ref = flux(0.5 * lambda);
  double worst = 0.0;
  for (int i = 1; i < grid_points; ++i) {
    const double eta = lambda * (static_cast<double>(i) / grid_points);
    worst = std::max(worst, std::abs(flux(eta) - ref));
  }
  return worst / std::abs(ref);
}

// Same flux constant measured against its value at eta = 0, endpoints
// included via one-sided second-order stencils.
inline double flux_constant_residual(const std::function<double(double)>& y_eval,
                                     double lambda, double delta, double p,
                                     int grid_points = 512) {
  if (grid_points < 3)
    throw std::invalid_argument("flux_constant_residual: grid_points must be >= 3");
  const double h = std::min(1e-6 * std::max(1.0, lambda), 0.25 * lambda / grid_points);
  auto dy = [&](double eta) {
    if (eta < h)
      return (-3.0 * y_eval(eta) + 4.0 * y_eval(eta + h) - y_eval(eta + 2.0 * h)) / (2.0 * h);
    if (eta > lambda - h)
      return (3.0 * y_eval(eta) - 4.0 * y_eval(eta - h) + y_eval(eta - 2.0 * h)) / (2.0 * h);
    return (y_eval(eta + h) - y_eval(eta - h)) / (2.0 * h);
  };
  auto flux = [&](double eta) {
    const double y = y_eval(eta);
    return (1.0 + delta * std::pow(std::max(y, 0.0), p)) * dy(eta) * std::exp(eta * eta);
  };
  const double ref = flux(0.0);
  double worst = 0.0;
  for (int i = 1; i <= grid_points; ++i) {
    const double eta = lambda * (static_cast<double>(i) / grid_points);
    worst = std::max(worst, std::abs(flux(eta) - ref));
  }
  return worst / std::abs(ref);
}

// |y'(lambda) + 2 lambda / Ste| / (2 lambda / Ste), y'(lambda) one-sided.
inline double stefan_residual(const std::function<double(double)>& y_eval, double lambda,
                              double ste) {
  const double h = std::min(1e-6 * std::max(1.0, lambda), 0.25 * lambda);
  const double yp = (3.0 * y_eval(lambda) - 4.0 * y_eval(lambda - h) +
                     y_eval(lambda - 2.0 * h)) /
                    (2.0 * h);
  const double expected = -2.0 * lambda / ste;
  return std::abs(yp - expected) / std::abs(expected);
}

}  // namespace stefan
