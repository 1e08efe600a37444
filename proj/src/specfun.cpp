#include "schurmix/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schurmix/detail/compensated.hpp"

namespace schurmix {

namespace {

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw DomainError(std::string(name) + " must be finite");
}

// Core series sum_j (b)_j / (c)_j w^j / j! for w >= 0, c > 0, any real b.
// Terms and the running sum are kept in double-double: when b < 0 the first
// ~|b| terms alternate in sign and the partial sums can exceed the result by
// many orders of magnitude. Truncation is certified: once past the
// alternating prefix and past the term-magnitude peak, the tail is bounded by
// a geometric series.
double series_1f1(double b, double c, double w, const SeriesControl& ctl) {
  using detail::dd;
  using detail::dd_add;
  using detail::dd_div;
  using detail::dd_mul;
  using detail::two_sum;

  dd term{1.0, 0.0};
  dd sum = term;
  // Index past which every factor (b+j) is positive, so terms stop alternating.
  const int settle = b < 0.0 ? static_cast<int>(std::ceil(-b)) : 0;

  for (int j = 0; j < ctl.max_terms; ++j) {
    // term *= (b+j) w / ((c+j)(j+1)); two_sum keeps parameter shifts exact.
    dd num = dd_mul(two_sum(b, j), w);
    dd den = dd_mul(two_sum(c, j), static_cast<double>(j + 1));
    term = dd_div(dd_mul(term, num), den);
    sum = dd_add(sum, term);
    if (term.hi == 0.0) return sum.hi + sum.lo;

    if (j + 1 >= settle) {
      // All remaining ratios are below r = max((b+j+1)/(c+j+1), 1) * w/(j+2).
      double r = std::max((b + j + 1) / (c + j + 1), 1.0) * (w / (j + 2));
      if (r >= 0.0 && r < 1.0) {
        double tail = std::abs(term.hi) * r / (1.0 - r);
        if (tail <= ctl.rel_tol * std::abs(sum.hi)) return sum.hi + sum.lo;
      }
    }
  }
  double last = std::abs(term.hi);
  throw ConvergenceError("kummer_1f1: series did not converge in " +
                             std::to_string(ctl.max_terms) + " terms",
                         sum.hi, last);
}

}  // namespace

double log_gamma(double x) {
  require_finite(x, "log_gamma: x");
  if (x <= 0.0) throw DomainError("log_gamma: x must be positive");
  return std::lgamma(x);
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta_fn: a, b must be positive");
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double rising_factorial(double x, int k) {
  require_finite(x, "rising_factorial: x");
  if (k < 0) throw DomainError("rising_factorial: k must be >= 0");
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x + i;
  return r;
}

double poisson_pmf(int k, double mu) {
  require_finite(mu, "poisson_pmf: mu");
  if (k < 0) throw DomainError("poisson_pmf: k must be >= 0");
  if (mu < 0.0) throw DomainError("poisson_pmf: mu must be >= 0");
  if (mu == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(k * std::log(mu) - mu - std::lgamma(static_cast<double>(k) + 1.0));
}

double reg_lower_inc_gamma(double a, double x, const SeriesControl& ctl) {
  require_finite(a, "reg_lower_inc_gamma: a");
  require_finite(x, "reg_lower_inc_gamma: x");
  if (!(a > 0.0)) throw DomainError("reg_lower_inc_gamma: a must be positive");
  if (x < 0.0) throw DomainError("reg_lower_inc_gamma: x must be >= 0");
  if (x == 0.0) return 0.0;

  const double log_pref = a * std::log(x) - x - std::lgamma(a);

  if (x < a + 1.0) {
    // Lower series: P = e^{log_pref} sum_n x^n / (a (a+1) ... (a+n)) * a / x^0...
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < ctl.max_terms; ++n) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-17)
        return std::min(1.0, sum * std::exp(log_pref));
    }
    throw ConvergenceError("reg_lower_inc_gamma: series stalled", sum * std::exp(log_pref),
                           term);
  }

  // Upper tail by modified Lentz continued fraction, then P = 1 - Q.
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= ctl.max_terms; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      double q = std::exp(log_pref) * h;
      return std::max(0.0, 1.0 - q);
    }
  }
  throw ConvergenceError("reg_lower_inc_gamma: continued fraction stalled",
                         1.0 - std::exp(log_pref) * h, 0.0);
}

double kummer_1f1(double b, double c, double w, const SeriesControl& ctl) {
  require_finite(b, "kummer_1f1: b");
  require_finite(c, "kummer_1f1: c");
  require_finite(w, "kummer_1f1: w");
  if (!(c > 0.0)) throw DomainError("kummer_1f1: c must be positive");
  if (w == 0.0) return 1.0;
  if (w < 0.0) {
    // Kummer transform keeps the series argument nonnegative. c - b is a
    // single correctly rounded subtraction, so no accuracy is lost here; the
    // cancellation it can induce inside the series is what dd absorbs.
    return std::exp(w) * series_1f1(c - b, c, -w, ctl);
  }
  return series_1f1(b, c, w, ctl);
}

double appell_phi2(double b, double b2, double c, double w, double z,
                   const SeriesControl& ctl) {
  require_finite(b, "appell_phi2: b");
  require_finite(b2, "appell_phi2: b2");
  require_finite(c, "appell_phi2: c");
  require_finite(w, "appell_phi2: w");
  require_finite(z, "appell_phi2: z");
  if (!(c > 0.0)) throw DomainError("appell_phi2: c must be positive");

  // Outer expansion in z; inner value is a full 1F1 at shifted denominator
  // parameter. For z >= 0 and b2 > 0 the outer terms are positive and the
  // tail has a certified geometric bound; otherwise fall back to stopping on
  // two consecutive negligible terms.
  const bool positive = z >= 0.0 && b2 > 0.0;
  double coef = 1.0;  // (b2)_m / (c)_m z^m / m!
  double sum = 0.0;
  int small_streak = 0;
  for (int m = 0; m < ctl.max_terms; ++m) {
    double inner = m == 0 && w == 0.0 ? 1.0 : kummer_1f1(b, c + m, w, ctl);
    double term = coef * inner;
    sum += term;

    double coef_next = coef * (b2 + m) * z / ((c + m) * (m + 1));
    if (positive) {
      // Inner 1F1 values approach 1 monotonically as the denominator
      // parameter grows; bound them by max(inner at this m, 1).
      double inner_bound = std::max(std::abs(inner), 1.0);
      double r = std::max((b2 + m + 1) / (c + m + 1), 1.0) * (z / (m + 2));
      if (r < 1.0) {
        double tail = std::abs(coef_next) * inner_bound / (1.0 - r);
        if (tail <= ctl.rel_tol * std::abs(sum)) return sum;
      }
    } else {
      if (std::abs(term) <= ctl.rel_tol * std::abs(sum)) {
        if (++small_streak >= 2) return sum;
      } else {
        small_streak = 0;
      }
    }
    coef = coef_next;
    if (coef == 0.0) return sum;
  }
  throw ConvergenceError("appell_phi2: outer series did not converge in " +
                             std::to_string(ctl.max_terms) + " terms",
                         sum, std::abs(coef));
}

}  // namespace schurmix
