#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

// Error function and the growth composites x*exp(x^2), x*exp(x^2)*erf(x)
// used by the front equations. Self-contained apart from exp/sqrt/abs.

namespace stefan {

inline constexpr double kSqrtPi = 1.7724538509055160272981674833411452;
inline constexpr double kInvSqrtPi = 0.5641895835477562869480794515607726;
inline constexpr double kTwoOverSqrtPi = 1.1283791670955125738961589031215452;

// exp(x^2) guard: beyond this the composites leave double range. Physical
// front coefficients in this model stay below 4.
inline constexpr double kOverflowArg = 26.0;

// Documented accuracy of the functions in this header on |x| <= 6.
struct Accuracy {
  double abs_tol = 1e-14;
  double rel_tol = 1e-13;

  void validate() const {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("Accuracy.abs_tol must be > 0");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("Accuracy.rel_tol must be > 0");
  }
};

inline constexpr Accuracy kSpecfunAccuracy{};

namespace detail {

// Maclaurin series erf(x) = 2/sqrt(pi) sum (-1)^n x^(2n+1) / (n! (2n+1)).
// For |x| <= 2 the largest term is ~2.4x the result, so cancellation costs
// at most a couple of ulps.
inline double erf_series(double x) {
  const double x2 = x * x;
  double power = x;  // (-1)^n x^(2n+1) / n!
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    power *= -x2 / n;
    const double term = power / (2 * n + 1);
    sum += term;
    if (std::abs(term) < 1e-17) break;
  }
  return kTwoOverSqrtPi * sum;
}

// Laplace continued fraction, x > 2 (modified Lentz):
//   sqrt(pi) e^{x^2} erfc(x) = 1/(x+ (1/2)/(x+ (2/2)/(x+ (3/2)/(x+ ...))))
inline double erfc_continued_fraction(double x) {
  const double tiny = 1e-300;
  double value = tiny;
  double c = value;
  double d = 0.0;
  for (int n = 1; n <= 400; ++n) {
    const double a = (n == 1) ? 1.0 : 0.5 * (n - 1);
    d = x + a * d;
    if (d == 0.0) d = tiny;
    d = 1.0 / d;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    const double factor = c * d;
    value *= factor;
    if (std::abs(factor - 1.0) < 1e-17) break;
  }
  return kInvSqrtPi * std::exp(-x * x) * value;
}

}  // namespace detail

// erf with |error| <= 1e-14 on |x| <= 6; odd by construction.
inline double erf(double x) {
  if (!std::isfinite(x)) throw std::domain_error("erf: non-finite argument");
  const double ax = std::abs(x);
  const double r = (ax <= 2.0) ? detail::erf_series(ax)
                               : 1.0 - detail::erfc_continued_fraction(ax);
  return (x < 0.0) ? -r : r;
}

// erf(a) - erf(b). For tiny arguments the direct difference cancels, so sum
// the Maclaurin difference termwise with the (a - b) factor pulled out.
inline double erf_diff(double a, double b) {
  if (std::max(std::abs(a), std::abs(b)) < 1e-4) {
    const double a2 = a * a, b2 = b * b, ab = a * b;
    const double q2 = (a2 + ab + b2) / 3.0;
    const double q4 = (a2 * a2 + a2 * ab + a2 * b2 + ab * b2 + b2 * b2) / 10.0;
    return kTwoOverSqrtPi * (a - b) * (1.0 - q2 + q4);
  }
  return erf(a) - erf(b);
}

namespace detail {

inline void check_growth_domain(double x, const char* fn) {
  if (!std::isfinite(x) || x < 0.0)
    throw std::domain_error(std::string(fn) + ": argument must be finite and >= 0");
  if (x > kOverflowArg)
    throw std::overflow_error(std::string(fn) + ": exp(x^2) would overflow (x > 26)");
}

}  // namespace detail

// x exp(x^2), strictly increasing on [0, 26].
inline double growth(double x) {
  detail::check_growth_domain(x, "growth");
  return x * std::exp(x * x);
}

// f(x) = x exp(x^2) erf(x), the Dirichlet front function; strictly
// increasing with f(0) = 0.
inline double f_neumann(double x) {
  detail::check_growth_domain(x, "f_neumann");
  return x * std::exp(x * x) * erf(x);
}

}  // namespace stefan
