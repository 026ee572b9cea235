#pragma once

#include <cmath>
#include <stdexcept>

// Test-only reference implementations, deliberately independent of the
// library's algorithm choices.

namespace testing_oracles {

// erf via the non-alternating scaled Maclaurin series
//   erf(x) = 2/sqrt(pi) x exp(-x^2) sum_n (2 x^2)^n / (2n+1)!!
// summed to stagnation. All terms positive, so no cancellation; a different
// route than the production alternating series + continued fraction.
inline double erf_series(double x) {
  const double two_over_sqrt_pi = 1.1283791670955125738961589031215452;
  const double ax = std::abs(x);
  const double t = 2.0 * ax * ax;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 1000; ++n) {
    term *= t / (2 * n + 1);
    sum += term;
    if (term < 1e-20 * sum) break;
  }
  const double r = two_over_sqrt_pi * ax * std::exp(-ax * ax) * sum;
  return (x < 0) ? -r : r;
}

// Plain bisection, tolerance on the argument.
template <typename Fn>
double bisect(Fn&& fn, double lo, double hi, double tol = 1e-13, int max_iter = 400) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw std::runtime_error("bisect: no sign change");
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(lo < mid && mid < hi)) break;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if (flo * fm <= 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace testing_oracles
