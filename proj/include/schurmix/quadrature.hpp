#pragma once

#include <cmath>
#include <utility>

#include "schurmix/errors.hpp"

namespace schurmix {

// Adaptive Simpson integration with the standard Richardson acceptance test
// (|S_left + S_right - S| <= 15 tol) and accepted-value refinement. Depth is
// bounded; exhausting it raises ConvergenceError with the partial value.
// tol is absolute.
//
// Integrable endpoint singularities must be removed by the caller; the two
// wrappers below handle the cases this project meets (a w^{a-1} blow-up at 0
// with a >= 1/2, and beta-type endpoints with both shapes >= 1/2).

namespace detail {

template <class F>
double adapt(F& f, double a, double fa, double b, double fb, double m, double fm,
             double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14 * (1.0 + std::abs(a)))
    return left + right + delta / 15.0;
  if (depth <= 0)
    throw ConvergenceError("adaptive_simpson: max depth reached", left + right, delta);
  return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 48) {
  if (!(a <= b)) throw DomainError("adaptive_simpson: a must be <= b");
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adapt(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

// Integral of f over (0, b) where f(w) ~ w^{a-1} near 0 with a >= 1/2:
// substitute w = t^2, dw = 2t dt, so the integrand t -> 2 t f(t^2) is bounded.
// The lower endpoint is inset to 1e-150 (omitted mass ~1e-150 * sup) so the
// transformed integrand is evaluated where pow stays finite.
template <class F>
double integrate_zero_singular(F&& f, double b, double tol, int max_depth = 48) {
  auto g = [&](double t) { return 2.0 * t * f(t * t); };
  return adaptive_simpson(g, 1e-150, std::sqrt(b), tol, max_depth);
}

// Integral over (0, 1) of a beta-type integrand (both shape parameters
// >= 1/2), substituting u = sin^2(theta). The integrand receives u and 1-u
// separately (1-u = cos^2 theta) so no cancellation occurs near u = 1.
template <class F>
double integrate_unit_beta(F&& g, double tol, int max_depth = 48) {
  auto h = [&](double th) {
    double s = std::sin(th), c = std::cos(th);
    return g(s * s, c * c) * 2.0 * s * c;
  };
  // asin(1.0) is strictly below pi/2, so cos there is ~6e-17, never 0.
  return adaptive_simpson(h, 1e-150, std::asin(1.0), tol, max_depth);
}

}  // namespace schurmix
