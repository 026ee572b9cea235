#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

// Dimensional material description, the shared power-law coefficient
// bracket k(T) = k0 (1 + delta u^p), c(T) = c0 (1 + delta u^p) with
// u = (T - Tf)/(T0 - Tf), and the reduction to the dimensionless groups
// the solvers consume.

namespace stefan {

enum class BoundaryKind { dirichlet, robin };

struct MaterialSpec {
  double rho = 0.0;     // density
  double c0 = 0.0;      // specific heat at Tf
  double k0 = 0.0;      // conductivity at Tf
  double latent = 0.0;  // latent heat per unit mass
  double T0 = 0.0;      // fixed-face / bulk temperature
  double Tf = 0.0;      // phase-change temperature
  double h = 0.0;       // heat-transfer coefficient (Robin only)
  double delta = 0.0;
  double p = 1.0;

  void validate(BoundaryKind boundary = BoundaryKind::dirichlet) const {
    auto positive = [](double v, const char* name) {
      if (!std::isfinite(v) || !(v > 0.0))
        throw std::invalid_argument(std::string("MaterialSpec.") + name +
                                    " must be finite and positive");
    };
    positive(rho, "rho");
    positive(c0, "c0");
    positive(k0, "k0");
    positive(latent, "latent");
    if (!std::isfinite(T0) || !std::isfinite(Tf) || !(T0 > Tf))
      throw std::invalid_argument("MaterialSpec.T0 must exceed Tf");
    if (boundary == BoundaryKind::robin) positive(h, "h");
    if (!std::isfinite(delta) || delta < 0.0)
      throw std::invalid_argument("MaterialSpec.delta must be >= 0");
    if (!std::isfinite(p) || p < 0.0)
      throw std::invalid_argument("MaterialSpec.p must be >= 0");
  }
};

struct DimensionlessConfig {
  double ste = 0.0;  // Stefan number c0 (T0 - Tf) / latent
  double delta = 0.0;
  double p = 1.0;
  std::optional<double> gamma;  // 2 Bi = 2 h a / k0, Robin only
  double diffusivity_a = 1.0;   // a = sqrt(k0 / (rho c0))

  void validate() const {
    if (!std::isfinite(ste) || !(ste > 0.0))
      throw std::invalid_argument("DimensionlessConfig.ste must be positive");
    if (!std::isfinite(delta) || delta < 0.0)
      throw std::invalid_argument("DimensionlessConfig.delta must be >= 0");
    if (!std::isfinite(p) || p < 0.0)
      throw std::invalid_argument("DimensionlessConfig.p must be >= 0");
    if (gamma && (!std::isfinite(*gamma) || !(*gamma > 0.0)))
      throw std::invalid_argument("DimensionlessConfig.gamma must be positive");
    if (!std::isfinite(diffusivity_a) || !(diffusivity_a > 0.0))
      throw std::invalid_argument("DimensionlessConfig.diffusivity_a must be positive");
  }
};

inline DimensionlessConfig reduce(const MaterialSpec& spec, BoundaryKind boundary) {
  spec.validate(boundary);
  DimensionlessConfig cfg;
  cfg.ste = spec.c0 * (spec.T0 - spec.Tf) / spec.latent;
  cfg.delta = spec.delta;
  cfg.p = spec.p;
  cfg.diffusivity_a = std::sqrt(spec.k0 / (spec.rho * spec.c0));
  if (boundary == BoundaryKind::robin) cfg.gamma = 2.0 * spec.h * cfg.diffusivity_a / spec.k0;
  return cfg;
}

namespace detail {

// Shared bracket 1 + delta u^p. pow(0, 0) = 1, so p = 0 degenerates to the
// constant-coefficient laws k0 (1 + delta), c0 (1 + delta).
inline double coefficient_bracket(const MaterialSpec& spec, double T, const char* fn) {
  if (!std::isfinite(T) || T < spec.Tf || T > spec.T0)
    throw std::domain_error(std::string(fn) + ": T outside [Tf, T0]");
  const double u = (T - spec.Tf) / (spec.T0 - spec.Tf);
  return 1.0 + spec.delta * std::pow(u, spec.p);
}

}  // namespace detail

inline double conductivity(const MaterialSpec& spec, double T) {
  return spec.k0 * detail::coefficient_bracket(spec, T, "conductivity");
}

inline double heat_capacity(const MaterialSpec& spec, double T) {
  return spec.c0 * detail::coefficient_bracket(spec, T, "heat_capacity");
}

}  // namespace stefan
