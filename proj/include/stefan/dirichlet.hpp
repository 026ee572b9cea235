#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "stefan/model.hpp"
#include "stefan/rootfind.hpp"
#include "stefan/specfun.hpp"

// Dirichlet-condition melting problem. The similarity profile y and the
// front coefficient lambda come from the functional formulation
//   f(lambda) = g,          f(x) = x exp(x^2) erf(x),
//   y(eta)    = F^{-1}(G(eta)),
// with F(x) = x + delta/(p+1) x^{p+1} and
// G(eta) = sqrt(pi)/Ste lambda exp(lambda^2) (erf(lambda) - erf(eta)).

namespace stefan {

struct Profile {
  std::vector<double> etas;
  std::vector<double> values;
};

namespace detail {

// Endpoint slack for eta-domain checks: profile probes land a few ulps
// outside [0, lambda] after grid arithmetic.
inline double eta_slack(double lambda) {
  return 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, lambda);
}

inline double checked_eta(double eta, double lambda, const char* fn) {
  if (!(lambda > 0.0)) throw std::invalid_argument(std::string(fn) + ": lambda must be > 0");
  const double slack = eta_slack(lambda);
  if (!std::isfinite(eta) || eta < -slack || eta > lambda + slack)
    throw std::domain_error(std::string(fn) + ": eta outside [0, lambda]");
  return std::clamp(eta, 0.0, lambda);
}

}  // namespace detail

// g = Ste/sqrt(pi) (1 + delta/(p+1)), the right-hand side of the front
// equation.
inline double g_constant(const DimensionlessConfig& config) {
  config.validate();
  return config.ste * kInvSqrtPi * (1.0 + config.delta / (config.p + 1.0));
}

// F(x) = x + delta/(p+1) x^{p+1}; strictly increasing on [0, inf).
inline double big_f(double x, double delta, double p) {
  if (!std::isfinite(x) || x < 0.0) throw std::domain_error("big_f: x must be >= 0");
  return x + delta / (p + 1.0) * std::pow(x, p + 1.0);
}

// Inverse of F on [0, inf). delta = 0 and p in {0, 1} reduce to closed
// forms; otherwise solve on [0, max(1, z)], valid since F(x) >= x.
inline double inv_f(double z, double delta, double p, const RootConfig& cfg = {}) {
  if (!std::isfinite(z) || z < 0.0) throw std::domain_error("inv_f: z must be >= 0");
  if (delta == 0.0 || z == 0.0) return z;
  if (p == 0.0) return z / (1.0 + delta);
  if (p == 1.0) return 2.0 * z / (1.0 + std::sqrt(1.0 + 2.0 * delta * z));
  return solve_bracketed([&](double x) { return big_f(x, delta, p) - z; }, 0.0,
                         std::max(1.0, z), cfg)
      .root;
}

// G(eta) for a given front coefficient; decreasing in eta, G(lambda) = 0.
inline double big_g(double eta, double lambda, double ste) {
  if (!(ste > 0.0)) throw std::invalid_argument("big_g: ste must be > 0");
  eta = detail::checked_eta(eta, lambda, "big_g");
  return kSqrtPi / ste * lambda * std::exp(lambda * lambda) * erf_diff(lambda, eta);
}

struct DirichletSolution {
  DimensionlessConfig config;
  double lambda = 0.0;
  double g_target = 0.0;
  RootResult solve_report;
};

inline DirichletSolution solve_lambda(const DimensionlessConfig& config,
                                      const RootConfig& cfg = {}) {
  config.validate();
  const double g = g_constant(config);
  const auto bracket = expand_upward([](double x) { return f_neumann(x); }, g, 0.0, cfg);
  RootResult report = solve_bracketed([&](double x) { return f_neumann(x) - g; },
                                      bracket.first, bracket.second, cfg);
  return {config, report.root, g, report};
}

inline double profile_y(const DirichletSolution& sol, double eta, const RootConfig& cfg = {}) {
  const double z = big_g(eta, sol.lambda, sol.config.ste);
  return inv_f(z, sol.config.delta, sol.config.p, cfg);
}

// p = 1 closed form
//   y = (sqrt((1+d)^2 - d(2+d) r) - 1)/d,   r = erf(eta)/erf(lambda),
// rearranged as (2+d)(1-r)/(1 + sqrt(.)) so the front endpoint is exact.
inline double closed_form_p1(double eta, double lambda, double delta) {
  if (delta == 0.0)
    throw std::domain_error("closed_form_p1: delta must be > 0 (constant-coefficient case "
                            "has its own profile 1 - erf(eta)/erf(lambda))");
  if (!std::isfinite(delta) || delta < 0.0)
    throw std::domain_error("closed_form_p1: delta must be >= 0");
  eta = detail::checked_eta(eta, lambda, "closed_form_p1");
  const double r = erf(eta) / erf(lambda);
  const double disc = (1.0 + delta) * (1.0 + delta) - delta * (2.0 + delta) * r;
  return (2.0 + delta) * (1.0 - r) / (1.0 + std::sqrt(disc));
}

// T(x,t) = (T0 - Tf) y(x / (2 a sqrt(t))) + Tf on 0 <= x <= s(t).
inline double temperature(const DirichletSolution& sol, const MaterialSpec& spec, double x,
                          double t, const RootConfig& cfg = {}) {
  if (!std::isfinite(t) || !(t > 0.0)) throw std::domain_error("temperature: t must be > 0");
  if (!std::isfinite(x) || x < 0.0) throw std::domain_error("temperature: x must be >= 0");
  const double a = std::sqrt(spec.k0 / (spec.rho * spec.c0));
  const double eta = x / (2.0 * a * std::sqrt(t));
  if (eta > sol.lambda + detail::eta_slack(sol.lambda))
    throw std::domain_error("temperature: x beyond the front s(t)");
  return (spec.T0 - spec.Tf) * profile_y(sol, std::min(eta, sol.lambda), cfg) + spec.Tf;
}

// s(t) = 2 a lambda sqrt(t)
inline double front(const DirichletSolution& sol, const MaterialSpec& spec, double t) {
  if (!std::isfinite(t) || t < 0.0) throw std::domain_error("front: t must be >= 0");
  const double a = std::sqrt(spec.k0 / (spec.rho * spec.c0));
  return 2.0 * a * sol.lambda * std::sqrt(t);
}

// Uniform sampling of y on [0, lambda]; nodes are placed multiplicatively so
// tiny fronts keep relative spacing.
inline Profile sample_profile(const DirichletSolution& sol, int n, const RootConfig& cfg = {}) {
  if (n < 2) throw std::invalid_argument("sample_profile: need at least 2 nodes");
  Profile prof;
  prof.etas.resize(n);
  prof.values.resize(n);
  for (int i = 0; i < n; ++i) {
    const double eta = sol.lambda * (static_cast<double>(i) / (n - 1));
    prof.etas[i] = eta;
    prof.values[i] = profile_y(sol, eta, cfg);
  }
  return prof;
}

}  // namespace stefan
