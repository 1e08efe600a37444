#include "oracle_mpfr.hpp"

#include <mpfr.h>

#include <cmath>
#include <stdexcept>

namespace schurmix::oracle {

namespace {

constexpr mpfr_prec_t kPrec = 384;

// sum_j (b)_j/(c)_j w^j/j! into `out`, all in the working precision. The
// direct series loses ~45 bits to cancellation at the worst acceptance-domain
// points, which 384 bits absorb with a wide margin.
void hyp1f1_mpfr(mpfr_t out, const mpfr_t b, const mpfr_t c, const mpfr_t w) {
  mpfr_t term, num, den, tmp;
  mpfr_inits2(kPrec, term, num, den, tmp, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui(term, 1, MPFR_RNDN);
  mpfr_set_ui(out, 1, MPFR_RNDN);
  int small = 0;
  for (long j = 0; j < 200000 && small < 8; ++j) {
    mpfr_add_si(num, b, j, MPFR_RNDN);
    mpfr_mul(num, num, w, MPFR_RNDN);
    mpfr_add_si(den, c, j, MPFR_RNDN);
    mpfr_mul_si(den, den, j + 1, MPFR_RNDN);
    mpfr_mul(term, term, num, MPFR_RNDN);
    mpfr_div(term, term, den, MPFR_RNDN);
    mpfr_add(out, out, term, MPFR_RNDN);
    mpfr_abs(tmp, term, MPFR_RNDN);
    mpfr_mul_2si(tmp, tmp, 360, MPFR_RNDN);
    mpfr_abs(den, out, MPFR_RNDN);
    small = mpfr_cmp(tmp, den) <= 0 ? small + 1 : 0;
  }
  if (small < 8) throw std::runtime_error("oracle hyp1f1: series did not converge");
  mpfr_clears(term, num, den, tmp, static_cast<mpfr_ptr>(nullptr));
}

}  // namespace

double hyp1f1(double b, double c, double w) {
  mpfr_t mb, mc, mw, out;
  mpfr_inits2(kPrec, mb, mc, mw, out, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(mb, b, MPFR_RNDN);
  mpfr_set_d(mc, c, MPFR_RNDN);
  mpfr_set_d(mw, w, MPFR_RNDN);
  hyp1f1_mpfr(out, mb, mc, mw);
  double r = mpfr_get_d(out, MPFR_RNDN);
  mpfr_clears(mb, mc, mw, out, static_cast<mpfr_ptr>(nullptr));
  return r;
}

double phi2(double b, double b2, double c, double w, double z) {
  mpfr_t mb, mc, mw, cm, coef, inner, term, sum, tmp;
  mpfr_inits2(kPrec, mb, mc, mw, cm, coef, inner, term, sum, tmp,
              static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(mb, b, MPFR_RNDN);
  mpfr_set_d(mc, c, MPFR_RNDN);
  mpfr_set_d(mw, w, MPFR_RNDN);
  mpfr_set_ui(coef, 1, MPFR_RNDN);
  mpfr_set_ui(sum, 0, MPFR_RNDN);
  int small = 0;
  bool converged = false;
  for (long m = 0; m < 100000; ++m) {
    mpfr_add_si(cm, mc, m, MPFR_RNDN);  // c + m
    hyp1f1_mpfr(inner, mb, cm, mw);
    mpfr_mul(term, coef, inner, MPFR_RNDN);
    mpfr_add(sum, sum, term, MPFR_RNDN);

    mpfr_abs(tmp, term, MPFR_RNDN);
    mpfr_mul_2si(tmp, tmp, 360, MPFR_RNDN);
    mpfr_abs(inner, sum, MPFR_RNDN);
    small = mpfr_cmp(tmp, inner) <= 0 ? small + 1 : 0;
    if (small >= 8) {
      converged = true;
      break;
    }
    // coef *= (b2+m) z / ((c+m)(m+1))
    mpfr_set_d(tmp, b2, MPFR_RNDN);
    mpfr_add_si(tmp, tmp, m, MPFR_RNDN);
    mpfr_mul_d(tmp, tmp, z, MPFR_RNDN);
    mpfr_mul(coef, coef, tmp, MPFR_RNDN);
    mpfr_mul_si(cm, cm, m + 1, MPFR_RNDN);
    mpfr_div(coef, coef, cm, MPFR_RNDN);
  }
  if (!converged) throw std::runtime_error("oracle phi2: series did not converge");
  double r = mpfr_get_d(sum, MPFR_RNDN);
  mpfr_clears(mb, mc, mw, cm, coef, inner, term, sum, tmp, static_cast<mpfr_ptr>(nullptr));
  return r;
}

}  // namespace schurmix::oracle
