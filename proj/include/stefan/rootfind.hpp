#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "stefan/specfun.hpp"

// Bracketed scalar root finding: safeguarded bisection with secant
// acceleration, for strictly monotone continuous functions.

namespace stefan {

struct RootConfig {
  double abs_tol = 1e-12;  // tolerance on the argument, not the residual
  int max_iter = 200;
  double bracket_growth = 2.0;

  void validate() const {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("RootConfig.abs_tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("RootConfig.max_iter must be >= 1");
    if (!(bracket_growth > 1.0))
      throw std::invalid_argument("RootConfig.bracket_growth must be > 1");
  }
};

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

class bracket_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& msg, double lo, double hi)
      : std::runtime_error(msg + " (last bracket [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "])"),
        lo_(lo),
        hi_(hi) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

class unbounded_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finds the root of fn on [lo, hi] given fn(lo)*fn(hi) <= 0. Secant steps
// are taken only when they land strictly inside the current bracket, and a
// bisection is forced whenever the previous step failed to halve it, so the
// bracket shrinks at least geometrically. Terminates when the bracket is
// narrower than 2*abs_tol (or cannot shrink further in double precision).
template <typename Fn>
RootResult solve_bracketed(Fn&& fn, double lo, double hi, const RootConfig& cfg = {}) {
  cfg.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi))
    throw std::invalid_argument("solve_bracketed: invalid interval");

  double fa = fn(lo);
  double fb = fn(hi);
  if (fa == 0.0) return {lo, 0.0, 0, lo, lo};
  if (fb == 0.0) return {hi, 0.0, 0, hi, hi};
  if (fa * fb > 0.0)
    throw bracket_error("solve_bracketed: no sign change on the given interval");

  double a = lo, b = hi;
  int iterations = 0;
  bool force_bisect = false;
  while (b - a > 2.0 * cfg.abs_tol) {
    if (iterations >= cfg.max_iter)
      throw convergence_error("solve_bracketed: max_iter exceeded", a, b);
    const double mid = a + 0.5 * (b - a);
    if (!(a < mid && mid < b)) break;  // interval at floating-point resolution

    double x = mid;
    if (!force_bisect && fb != fa) {
      const double s = b - fb * (b - a) / (fb - fa);
      if (a < s && s < b) x = s;
    }
    ++iterations;
    const double fx = fn(x);
    if (fx == 0.0) return {x, 0.0, iterations, x, x};

    const double width = b - a;
    if (fa * fx < 0.0) {
      b = x;
      fb = fx;
    } else {
      a = x;
      fa = fx;
    }
    force_bisect = (b - a) > 0.5 * width;
  }

  const double root = a + 0.5 * (b - a);
  return {root, fn(root), iterations, a, b};
}

// Expands hi geometrically until fn(hi) >= target (fn strictly increasing,
// fn(lo) <= target). Returns a bracket whose lower end is the last expansion
// point below the target.
template <typename Fn>
std::pair<double, double> expand_upward(Fn&& fn, double target, double lo,
                                        const RootConfig& cfg = {}) {
  cfg.validate();
  if (!std::isfinite(lo) || !std::isfinite(target))
    throw std::invalid_argument("expand_upward: non-finite input");
  if (fn(lo) > target)
    throw bracket_error("expand_upward: fn(lo) already exceeds the target");

  double a = lo;
  double hi = (lo > 0.0) ? lo * cfg.bracket_growth : 1.0;
  while (true) {
    if (hi > kOverflowArg) {
      if (fn(kOverflowArg) >= target) return {a, kOverflowArg};
      throw unbounded_error("expand_upward: target unreachable below the overflow guard");
    }
    if (fn(hi) >= target) return {a, hi};
    a = hi;
    hi *= cfg.bracket_growth;
  }
}

}  // namespace stefan
