#pragma once

// Exact continued-fraction expansion of a quadratic surd (P + sqrt(D)) / Q
// with integer arithmetic only — an oracle independent of the interval-based
// expander under test. Requires D not a perfect square and Q | (D - P^2)
// (any surd can be brought to this form by scaling).

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

namespace testsupport {

inline std::vector<mpz_class> surd_cf(mpz_class P, mpz_class D, mpz_class Q,
                                      std::size_t count) {
    if (Q == 0) throw std::invalid_argument("surd_cf: Q = 0");
    mpz_class r = sqrt(D);
    if (r * r == D) throw std::invalid_argument("surd_cf: D is a perfect square");
    if ((D - P * P) % Q != 0) {
        // Normalize: multiply numerator and denominator by |Q|.
        P *= abs(Q);
        D *= Q * Q;
        Q *= abs(Q);
        r = sqrt(D);
    }
    std::vector<mpz_class> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        // floor((P + sqrt(D)) / Q): sqrt(D) lies in (r, r+1).
        mpz_class a;
        if (Q > 0) {
            mpz_class num = P + r;
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        } else {
            mpz_class num = P + r + 1; // ceil boundary: sqrt(D) irrational
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        }
        out.push_back(a);
        P = a * Q - P;
        Q = (D - P * P) / Q;
        if (Q == 0) throw std::logic_error("surd_cf: denominator collapsed");
    }
    return out;
}

} // namespace testsupport
