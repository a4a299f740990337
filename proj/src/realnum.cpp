#include "balcert/realnum.hpp"

#include "balcert/errors.hpp"

#include <utility>

namespace balcert {

namespace {

bool width_certified(const interval& iv, mpfr_prec_t precision) {
    // hi − lo ≤ 2^{−precision}·max(1, |hi|)
    bigfloat w = iv.width();
    bigfloat m(iv.prec());
    mpfr_abs(m.raw(), iv.hi().raw(), MPFR_RNDU);
    if (mpfr_cmp_ui(m.raw(), 1) < 0) mpfr_set_ui(m.raw(), 1, MPFR_RNDN);
    mpfr_mul_2si(m.raw(), m.raw(), -static_cast<long>(precision), MPFR_RNDD);
    return w <= m;
}

} // namespace

interval real_oracle::eval(mpfr_prec_t precision, const precision_policy& policy) const {
    for (mpfr_prec_t work = precision + 64;; work *= 2) {
        if (work > policy.cap)
            throw precision_cap_error("real_oracle '" + label_ + "': width not certified at cap " +
                                      std::to_string(policy.cap));
        interval iv = fn_(work);
        if (width_certified(iv, precision)) return iv;
    }
}

real_oracle oracle_sqrt_ui(unsigned long u) {
    return real_oracle("sqrt(" + std::to_string(u) + ")",
                       [u](mpfr_prec_t p) { return sqrt_ui(u, p); });
}

real_oracle oracle_alpha() {
    return real_oracle("alpha = 3+sqrt(8)", [](mpfr_prec_t p) {
        return add_ui(sqrt_ui(8, p), 3, p);
    });
}

real_oracle oracle_log_alpha() {
    return real_oracle("log(alpha)", [](mpfr_prec_t p) {
        return log(add_ui(sqrt_ui(8, p), 3, p), p);
    });
}

real_oracle oracle_log2() {
    return real_oracle("log(2)", [](mpfr_prec_t p) {
        return log(interval::exact_ui(2, p), p);
    });
}

real_oracle oracle_four_sqrt_two() {
    // 4√2 = √32
    return real_oracle("4*sqrt(2)", [](mpfr_prec_t p) { return sqrt_ui(32, p); });
}

real_oracle oracle_log_four_sqrt_two() {
    return real_oracle("log(4*sqrt(2))", [](mpfr_prec_t p) {
        return log(sqrt_ui(32, p), p);
    });
}

real_oracle oracle_tau() {
    return real_oracle("tau = log(alpha)/log(2)", [](mpfr_prec_t p) {
        interval la = log(add_ui(sqrt_ui(8, p), 3, p), p);
        interval l2 = log(interval::exact_ui(2, p), p);
        return div(la, l2, p);
    });
}

std::vector<mpz_class> cf_expand(const real_oracle& oracle, std::size_t count,
                                 mpfr_prec_t precision, const precision_policy& policy) {
    std::size_t stuck_at = 0;
    for (mpfr_prec_t work = precision;; work *= 2) {
        if (work > policy.cap)
            throw precision_cap_error("cf_expand('" + oracle.label() + "'): quotient #" +
                                      std::to_string(stuck_at) + " not certified at cap " +
                                      std::to_string(policy.cap));
        interval x = oracle.eval(work, policy);
        std::vector<mpz_class> quotients;
        quotients.reserve(count);
        bool ok = true;
        for (std::size_t i = 0; i < count; ++i) {
            mpz_class flo = floor_lo(x);
            mpz_class fhi;
            mpfr_get_z(fhi.get_mpz_t(), x.hi().raw(), MPFR_RNDD);
            if (flo != fhi) { // floor not constant on the enclosure
                stuck_at = i;
                ok = false;
                break;
            }
            quotients.push_back(flo);
            if (i + 1 == count) break;
            interval frac = sub(x, interval::exact_mpz(flo, work), work);
            if (!frac.certainly_positive()) { // fractional part too small to certify
                stuck_at = i + 1;
                ok = false;
                break;
            }
            x = div(interval::exact_ui(1, work), frac, work);
        }
        if (ok) return quotients;
    }
}

std::vector<convergent> convergents(const std::vector<mpz_class>& quotients) {
    if (quotients.empty())
        throw domain_error("convergents: empty quotient list");
    std::vector<convergent> out;
    out.reserve(quotients.size());
    mpz_class p_prev2 = 0, p_prev1 = 1; // p_{-2}=0, p_{-1}=1
    mpz_class q_prev2 = 1, q_prev1 = 0; // q_{-2}=1, q_{-1}=0
    for (std::size_t i = 0; i < quotients.size(); ++i) {
        if (i > 0 && quotients[i] <= 0)
            throw domain_error("convergents: partial quotient " + std::to_string(i) +
                               " not positive");
        mpz_class p = quotients[i] * p_prev1 + p_prev2;
        mpz_class q = quotients[i] * q_prev1 + q_prev2;
        out.push_back(convergent{i, p, q});
        p_prev2 = std::move(p_prev1);
        p_prev1 = std::move(p);
        q_prev2 = std::move(q_prev1);
        q_prev1 = std::move(q);
    }
    return out;
}

convergent first_convergent_q_exceeding(const real_oracle& oracle, const mpz_class& threshold,
                                        mpfr_prec_t precision, const precision_policy& policy) {
    if (threshold < 1)
        throw domain_error("first_convergent_q_exceeding: threshold must be >= 1");
    for (std::size_t count = 32; count <= 16384; count *= 2) {
        std::vector<convergent> cvs = convergents(cf_expand(oracle, count, precision, policy));
        for (const convergent& c : cvs)
            if (c.q > threshold) return c;
    }
    throw reduction_failure("first_convergent_q_exceeding('" + oracle.label() +
                            "'): no denominator above threshold within 16384 quotients");
}

interval nearest_int_distance(const interval& x) {
    mpfr_prec_t p = x.prec();
    // Work on 2x: the interval contains an integer iff [2lo, 2hi] contains an
    // even integer, a half-integer iff it contains an odd one. Doubling is
    // exact in binary floating point.
    bigfloat lo2(p), hi2(p);
    mpfr_mul_2si(lo2.raw(), x.lo().raw(), 1, MPFR_RNDD);
    mpfr_mul_2si(hi2.raw(), x.hi().raw(), 1, MPFR_RNDU);
    mpz_class m, M;
    mpfr_get_z(m.get_mpz_t(), lo2.raw(), MPFR_RNDU); // ceil(2lo)
    mpfr_get_z(M.get_mpz_t(), hi2.raw(), MPFR_RNDD); // floor(2hi)
    bool any = m <= M;
    bool contains_integer = any && (M - m >= 1 || mpz_even_p(m.get_mpz_t()));
    bool contains_half = any && (M - m >= 1 || mpz_odd_p(m.get_mpz_t()));

    // Distance of an exact endpoint t to its nearest integer, rounded in the
    // requested direction: toward zero before abs for a lower bound, away
    // from zero for an upper bound (abs itself is then exact).
    auto endpoint_dist = [p](const bigfloat& t, mpfr_rnd_t rnd) {
        // z must represent the nearest integer exactly even when t is huge.
        mpfr_prec_t zp = p;
        if (mpfr_regular_p(t.raw())) {
            mpfr_exp_t e = mpfr_get_exp(t.raw());
            if (e > 0 && static_cast<mpfr_prec_t>(e) + 8 > zp)
                zp = static_cast<mpfr_prec_t>(e) + 8;
        }
        bigfloat z(zp), d(p);
        mpfr_round(z.raw(), t.raw()); // nearest integer (ties away from zero)
        mpfr_sub(d.raw(), t.raw(), z.raw(), rnd == MPFR_RNDU ? MPFR_RNDA : MPFR_RNDZ);
        mpfr_abs(d.raw(), d.raw(), MPFR_RNDN);
        return d;
    };

    bigfloat lo(p), hi(p);
    if (contains_integer) {
        mpfr_set_ui(lo.raw(), 0, MPFR_RNDD);
    } else {
        bigfloat a = endpoint_dist(x.lo(), MPFR_RNDD);
        bigfloat b = endpoint_dist(x.hi(), MPFR_RNDD);
        lo = a < b ? a : b;
    }
    bigfloat half(p);
    mpfr_set_d(half.raw(), 0.5, MPFR_RNDN); // exact
    if (contains_half) {
        hi = half;
    } else {
        bigfloat a = endpoint_dist(x.lo(), MPFR_RNDU);
        bigfloat b = endpoint_dist(x.hi(), MPFR_RNDU);
        hi = a > b ? a : b;
        if (hi > half) hi = half; // ‖·‖ never exceeds 1/2
    }
    if (lo > hi) lo = hi; // guard against rounding artifacts at the boundary
    return interval(lo, hi);
}

} // namespace balcert
