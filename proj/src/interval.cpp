#include "balcert/interval.hpp"

#include "balcert/errors.hpp"

#include <array>
#include <utility>

namespace balcert {

interval::interval(bigfloat lo, bigfloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.is_nan() || hi_.is_nan() || lo_ > hi_)
        throw domain_error("interval: endpoints out of order or NaN");
}

interval interval::exact_ui(unsigned long u, mpfr_prec_t prec) {
    bigfloat x = bigfloat::from_ui(u, prec);
    return interval(x, x);
}

interval interval::exact_si(long s, mpfr_prec_t prec) {
    bigfloat lo(prec), hi(prec);
    mpfr_set_si(lo.raw(), s, MPFR_RNDD);
    mpfr_set_si(hi.raw(), s, MPFR_RNDU);
    return interval(lo, hi);
}

interval interval::exact_mpz(const mpz_class& z, mpfr_prec_t prec) {
    bigfloat lo(prec), hi(prec);
    mpfr_set_z(lo.raw(), z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi.raw(), z.get_mpz_t(), MPFR_RNDU);
    return interval(lo, hi);
}

interval interval::from_decimal(const std::string& s, mpfr_prec_t prec) {
    return interval(bigfloat::from_str(s, prec, MPFR_RNDD),
                    bigfloat::from_str(s, prec, MPFR_RNDU));
}

bigfloat interval::width() const {
    bigfloat w(lo_.prec());
    mpfr_sub(w.raw(), hi_.raw(), lo_.raw(), MPFR_RNDU);
    return w;
}

std::string interval::str(int digits) const {
    return "[" + lo_.str(digits, MPFR_RNDD) + ", " + hi_.str(digits, MPFR_RNDU) + "]";
}

interval add(const interval& a, const interval& b, mpfr_prec_t prec) {
    bigfloat lo(prec), hi(prec);
    mpfr_add(lo.raw(), a.lo().raw(), b.lo().raw(), MPFR_RNDD);
    mpfr_add(hi.raw(), a.hi().raw(), b.hi().raw(), MPFR_RNDU);
    return interval(lo, hi);
}

interval sub(const interval& a, const interval& b, mpfr_prec_t prec) {
    bigfloat lo(prec), hi(prec);
    mpfr_sub(lo.raw(), a.lo().raw(), b.hi().raw(), MPFR_RNDD);
    mpfr_sub(hi.raw(), a.hi().raw(), b.lo().raw(), MPFR_RNDU);
    return interval(lo, hi);
}

namespace {

// min/max over the four endpoint products (resp. quotients), each computed
// with the rounding direction that keeps the enclosure outward.
template <typename Op>
interval four_corner(const interval& a, const interval& b, mpfr_prec_t prec, Op op) {
    const std::array<std::pair<mpfr_srcptr, mpfr_srcptr>, 4> corners = {{
        {a.lo().raw(), b.lo().raw()},
        {a.lo().raw(), b.hi().raw()},
        {a.hi().raw(), b.lo().raw()},
        {a.hi().raw(), b.hi().raw()},
    }};
    bigfloat lo(prec), hi(prec), t(prec);
    for (int i = 0; i < 4; ++i) {
        op(t.raw(), corners[i].first, corners[i].second, MPFR_RNDD);
        if (i == 0 || t < lo) lo = t;
        op(t.raw(), corners[i].first, corners[i].second, MPFR_RNDU);
        if (i == 0 || t > hi) hi = t;
    }
    return interval(lo, hi);
}

} // namespace

interval mul(const interval& a, const interval& b, mpfr_prec_t prec) {
    return four_corner(a, b, prec, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) {
        mpfr_mul(r, x, y, rnd);
    });
}

interval div(const interval& a, const interval& b, mpfr_prec_t prec) {
    if (b.contains_zero())
        throw domain_error("interval div: divisor interval contains zero");
    return four_corner(a, b, prec, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) {
        mpfr_div(r, x, y, rnd);
    });
}

interval neg(const interval& a) {
    bigfloat lo(a.prec()), hi(a.prec());
    mpfr_neg(lo.raw(), a.hi().raw(), MPFR_RNDD);
    mpfr_neg(hi.raw(), a.lo().raw(), MPFR_RNDU);
    return interval(lo, hi);
}

interval abs(const interval& a) {
    if (a.lo().sgn() >= 0) return a;
    if (a.hi().sgn() <= 0) return neg(a);
    bigfloat lo(a.prec()), hi(a.prec()), t(a.prec());
    mpfr_set_ui(lo.raw(), 0, MPFR_RNDD);
    mpfr_abs(hi.raw(), a.lo().raw(), MPFR_RNDU);
    mpfr_abs(t.raw(), a.hi().raw(), MPFR_RNDU);
    if (t > hi) hi = t;
    return interval(lo, hi);
}

interval add_ui(const interval& a, unsigned long u, mpfr_prec_t prec) {
    bigfloat lo(prec), hi(prec);
    mpfr_add_ui(lo.raw(), a.lo().raw(), u, MPFR_RNDD);
    mpfr_add_ui(hi.raw(), a.hi().raw(), u, MPFR_RNDU);
    return interval(lo, hi);
}

interval mul_ui(const interval& a, unsigned long u, mpfr_prec_t prec) {
    return mul(a, interval::exact_ui(u, prec), prec);
}

interval div_ui(const interval& a, unsigned long u, mpfr_prec_t prec) {
    if (u == 0) throw domain_error("interval div_ui: divisor is zero");
    return div(a, interval::exact_ui(u, prec), prec);
}

interval mul_2si(const interval& a, long e, mpfr_prec_t prec) {
    bigfloat lo(prec), hi(prec);
    mpfr_mul_2si(lo.raw(), a.lo().raw(), e, MPFR_RNDD);
    mpfr_mul_2si(hi.raw(), a.hi().raw(), e, MPFR_RNDU);
    return interval(lo, hi);
}

interval sqrt_ui(unsigned long u, mpfr_prec_t prec) {
    bigfloat lo(prec), hi(prec);
    mpfr_sqrt_ui(lo.raw(), u, MPFR_RNDD);
    mpfr_sqrt_ui(hi.raw(), u, MPFR_RNDU);
    return interval(lo, hi);
}

interval log(const interval& a, mpfr_prec_t prec) {
    if (a.lo().sgn() <= 0)
        throw domain_error("interval log: argument not certainly positive");
    bigfloat lo(prec), hi(prec);
    mpfr_log(lo.raw(), a.lo().raw(), MPFR_RNDD);
    mpfr_log(hi.raw(), a.hi().raw(), MPFR_RNDU);
    return interval(lo, hi);
}

interval exp(const interval& a, mpfr_prec_t prec) {
    bigfloat lo(prec), hi(prec);
    mpfr_exp(lo.raw(), a.lo().raw(), MPFR_RNDD);
    mpfr_exp(hi.raw(), a.hi().raw(), MPFR_RNDU);
    return interval(lo, hi);
}

interval pow_ui(const interval& a, unsigned long e, mpfr_prec_t prec) {
    if (e == 0) return interval::exact_ui(1, prec);
    // Square-and-multiply over intervals keeps the enclosure outward at each
    // step. For possibly-negative bases, even powers are handled via abs.
    if (a.contains_zero() || a.certainly_negative()) {
        interval m = abs(a);
        interval r = pow_ui(m, e, prec);
        if (e % 2 == 0) {
            if (a.contains_zero()) {
                bigfloat z(prec);
                mpfr_set_ui(z.raw(), 0, MPFR_RNDD);
                return interval(z, r.hi());
            }
            return r;
        }
        return a.certainly_negative() ? neg(r)
                                      : interval(neg(r).lo(), r.hi());
    }
    interval acc = interval::exact_ui(1, prec);
    interval base = a;
    unsigned long k = e;
    while (k > 0) {
        if (k & 1UL) acc = mul(acc, base, prec);
        k >>= 1;
        if (k > 0) base = mul(base, base, prec);
    }
    return acc;
}

interval pow_si(const interval& a, long e, mpfr_prec_t prec) {
    if (!a.certainly_positive())
        throw domain_error("interval pow_si: base not certainly positive");
    if (e >= 0) return pow_ui(a, static_cast<unsigned long>(e), prec);
    return div(interval::exact_ui(1, prec),
               pow_ui(a, static_cast<unsigned long>(-e), prec), prec);
}

interval intersect(const interval& a, const interval& b) {
    const bigfloat& lo = a.lo() >= b.lo() ? a.lo() : b.lo();
    const bigfloat& hi = a.hi() <= b.hi() ? a.hi() : b.hi();
    if (lo > hi)
        throw reduction_failure("interval intersect: enclosures are disjoint");
    return interval(lo, hi);
}

mpz_class floor_lo(const interval& a) {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), a.lo().raw(), MPFR_RNDD);
    return z;
}

mpz_class ceil_hi(const interval& a) {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), a.hi().raw(), MPFR_RNDU);
    return z;
}

} // namespace balcert
