#pragma once

#include <cmath>
#include <optional>
#include <utility>

namespace ferrohyst {

/// An interval [lo, hi] on which an increasing function changes sign:
/// f_lo <= 0 <= f_hi.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
};

struct RootResult {
  double x = 0.0;
  double residual = 0.0;
  int evaluations = 0;
};

/// Grows [lo, hi] geometrically until f straddles zero, never leaving
/// [limit_lo, limit_hi]. Requires lo <= hi. Returns nullopt if no sign
/// change is found inside the limits.
template <class F>
std::optional<Bracket> expand_bracket(F&& f, double lo, double hi, double limit_lo, double limit_hi,
                                      int max_doublings = 80) {
  lo = std::max(lo, limit_lo);
  hi = std::min(hi, limit_hi);
  if (lo > hi) return std::nullopt;
  Bracket b{lo, hi, f(lo), f(hi)};
  double width = std::max(hi - lo, 1e-3);
  for (int i = 0; i < max_doublings; ++i) {
    if (b.f_lo <= 0.0 && b.f_hi >= 0.0) return b;
    if (b.f_lo > 0.0) {
      if (b.lo <= limit_lo) return std::nullopt;
      b.hi = b.lo;
      b.f_hi = b.f_lo;
      b.lo = std::max(b.lo - width, limit_lo);
      b.f_lo = f(b.lo);
    } else {
      if (b.hi >= limit_hi) return std::nullopt;
      b.lo = b.hi;
      b.f_lo = b.f_hi;
      b.hi = std::min(b.hi + width, limit_hi);
      b.f_hi = f(b.hi);
    }
    width *= 2.0;
  }
  if (b.f_lo <= 0.0 && b.f_hi >= 0.0) return b;
  return std::nullopt;
}

/// Root of an increasing function on a valid bracket.
///
/// Illinois-modified regula falsi with a bisection step whenever the bracket
/// fails to halve over two iterations. Stops when |f| <= abs_tol or the
/// bracket has collapsed to adjacent doubles; in the latter case the endpoint
/// with the smaller |f| is returned.
template <class F>
RootResult solve_increasing(F&& f, Bracket b, double abs_tol, int max_evaluations = 400) {
  RootResult best{b.lo, b.f_lo, 0};
  if (std::abs(b.f_hi) < std::abs(b.f_lo)) best = {b.hi, b.f_hi, 0};
  if (std::abs(best.residual) <= abs_tol) return best;

  double f_lo = b.f_lo;  // possibly scaled copies for the Illinois rule
  double f_hi = b.f_hi;
  int side = 0;          // -1: lo was kept last time, +1: hi was kept
  double width_two_back = 4.0 * (b.hi - b.lo);
  double width_one_back = 2.0 * (b.hi - b.lo);
  int evals = 0;

  while (evals < max_evaluations) {
    double x = 0.5 * (b.lo + b.hi);
    const double width = b.hi - b.lo;
    const bool stalled = width > 0.5 * width_two_back;
    if (!stalled && f_hi != f_lo) {
      const double secant = b.lo - f_lo * (b.hi - b.lo) / (f_hi - f_lo);
      if (secant > b.lo && secant < b.hi) x = secant;
    }
    if (!(x > b.lo && x < b.hi)) break;  // bracket collapsed to adjacent doubles

    const double fx = f(x);
    ++evals;
    if (std::abs(fx) < std::abs(best.residual)) best = {x, fx, evals};
    if (std::abs(fx) <= abs_tol) break;

    width_two_back = stalled ? width : width_one_back;
    width_one_back = width;
    if (fx < 0.0) {
      b.lo = x;
      b.f_lo = f_lo = fx;
      if (side == +1) f_hi *= 0.5;
      side = +1;
    } else {
      b.hi = x;
      b.f_hi = f_hi = fx;
      if (side == -1) f_lo *= 0.5;
      side = -1;
    }
  }
  best.evaluations = evals;
  return best;
}

}  // namespace ferrohyst
