#include "balcert/sequence.hpp"

#include "balcert/errors.hpp"
#include "balcert/interval.hpp"

#include <mutex>

namespace balcert {

mpz_class balancing(unsigned long n) {
    if (n == 0) return 0;
    mpz_class prev = 0, cur = 1;
    for (unsigned long i = 1; i < n; ++i) {
        mpz_class next = 6 * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

const std::vector<mpz_class>& balancing_prefix(std::size_t count) {
    if (count > balancing_prefix_cap)
        throw domain_error("balancing_prefix: count " + std::to_string(count) +
                           " exceeds cap " + std::to_string(balancing_prefix_cap));
    static const std::vector<mpz_class> prefix = [] {
        std::vector<mpz_class> v(balancing_prefix_cap);
        v[0] = 0;
        v[1] = 1;
        for (std::size_t i = 2; i < v.size(); ++i) v[i] = 6 * v[i - 1] - v[i - 2];
        return v;
    }();
    return prefix;
}

namespace {

// Enclosure of (α^n − β^n)/(4√2) at working precision p. β = 3−√8 = 1/α.
interval binet_value(unsigned long n, mpfr_prec_t p) {
    interval r8 = sqrt_ui(8, p);
    interval alpha = add_ui(r8, 3, p);
    interval beta = sub(interval::exact_ui(3, p), r8, p);
    interval num = sub(pow_ui(alpha, n, p), pow_ui(beta, n, p), p);
    return div(num, sqrt_ui(32, p), p);
}

} // namespace

bigfloat binet_residual(unsigned long n, mpfr_prec_t precision, const precision_policy& policy) {
    if (n < 1) throw domain_error("binet_residual: n must be >= 1");
    if (precision < 64)
        throw domain_error("binet_residual: precision " + std::to_string(precision) +
                           " too small to certify (need >= 64)");
    mpz_class bn = balancing(n);
    // Threshold 2^{−precision/2} (exactly representable).
    bigfloat threshold = bigfloat::from_ui(1, 64);
    mpfr_mul_2si(threshold.raw(), threshold.raw(), -static_cast<long>(precision / 2),
                 MPFR_RNDN);
    for (mpfr_prec_t work = precision;; work *= 2) {
        if (work > policy.cap)
            throw precision_cap_error("binet_residual(" + std::to_string(n) +
                                      "): bound not certified at cap " +
                                      std::to_string(policy.cap));
        interval diff = sub(interval::exact_mpz(bn, work), binet_value(n, work), work);
        interval mag = abs(diff);
        if (mag.hi() < threshold) {
            bigfloat r = mag.hi();
            return r;
        }
    }
}

bool growth_bounds_hold(unsigned long n, const precision_policy& policy) {
    if (n <= 1) throw domain_error("growth_bounds_hold: requires n > 1");
    mpz_class bn = balancing(n);
    for (mpfr_prec_t work = policy.initial;; work *= 2) {
        if (work > policy.cap)
            throw precision_cap_error("growth_bounds_hold(" + std::to_string(n) +
                                      "): comparison undecided at cap " +
                                      std::to_string(policy.cap));
        interval alpha = add_ui(sqrt_ui(8, work), 3, work);
        interval low = pow_ui(alpha, n - 1, work);
        interval high = pow_ui(alpha, n, work);
        interval b = interval::exact_mpz(bn, work);
        if (low.certainly_less(b) && b.certainly_less(high)) return true;
        // A certain violation would mean the inequality is false.
        if (b.certainly_less(low) || high.certainly_less(b)) return false;
    }
}

} // namespace balcert
