#pragma once

#include "balcert/bigfloat.hpp"

#include <gmpxx.h>

#include <string>

namespace balcert {

// Closed interval [lo, hi] with endpoints rounded outward (lo down, hi up) by
// every operation, so the true real value of an expression is always enclosed.
class interval {
  public:
    interval() = default;
    interval(bigfloat lo, bigfloat hi);

    const bigfloat& lo() const { return lo_; }
    const bigfloat& hi() const { return hi_; }

    mpfr_prec_t prec() const { return lo_.prec(); }

    // Point interval holding an exactly representable value.
    static interval exact_ui(unsigned long u, mpfr_prec_t prec);
    static interval exact_si(long s, mpfr_prec_t prec);
    static interval exact_mpz(const mpz_class& z, mpfr_prec_t prec);
    // Decimal string, rounded outward to a width-<=-1ulp enclosure.
    static interval from_decimal(const std::string& s, mpfr_prec_t prec);

    bool contains_zero() const { return lo_.sgn() <= 0 && hi_.sgn() >= 0; }
    bool certainly_positive() const { return lo_.sgn() > 0; }
    bool certainly_negative() const { return hi_.sgn() < 0; }
    bool certainly_less(const interval& o) const { return hi_ < o.lo_; }

    // hi - lo, rounded up.
    bigfloat width() const;
    double width_double() const { return width().to_double(MPFR_RNDU); }

    std::string str(int digits = 20) const;

  private:
    bigfloat lo_;
    bigfloat hi_;
};

// All operations take the working precision of the result explicitly; inputs
// may be at any precision.
interval add(const interval& a, const interval& b, mpfr_prec_t prec);
interval sub(const interval& a, const interval& b, mpfr_prec_t prec);
interval mul(const interval& a, const interval& b, mpfr_prec_t prec);
// Requires b to be sign-definite (throws domain_error otherwise).
interval div(const interval& a, const interval& b, mpfr_prec_t prec);
interval neg(const interval& a);
interval abs(const interval& a);

interval add_ui(const interval& a, unsigned long u, mpfr_prec_t prec);
interval mul_ui(const interval& a, unsigned long u, mpfr_prec_t prec);
interval div_ui(const interval& a, unsigned long u, mpfr_prec_t prec);
// a * 2^e (exact up to precision).
interval mul_2si(const interval& a, long e, mpfr_prec_t prec);

interval sqrt_ui(unsigned long u, mpfr_prec_t prec);
// Requires a.lo() > 0.
interval log(const interval& a, mpfr_prec_t prec);
interval exp(const interval& a, mpfr_prec_t prec);
interval pow_ui(const interval& a, unsigned long e, mpfr_prec_t prec);
// Integer power of a certainly-positive base (negative e allowed).
interval pow_si(const interval& a, long e, mpfr_prec_t prec);

// Intersection; throws reduction_failure if empty (two enclosures of the same
// real number can never be disjoint, so emptiness signals a logic error).
interval intersect(const interval& a, const interval& b);

// Largest integer <= a.lo() (conservative floor of anything in the interval).
mpz_class floor_lo(const interval& a);
// Smallest integer >= a.hi().
mpz_class ceil_hi(const interval& a);

} // namespace balcert
