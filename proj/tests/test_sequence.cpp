#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "balcert/errors.hpp"
#include "balcert/sequence.hpp"

#include <gmpxx.h>

using namespace balcert;

namespace {

// Independent evaluation of B_n via 2x2 matrix powers of [[6,-1],[1,0]]
// by binary exponentiation — no shared code with the recurrence loop.
mpz_class matrix_balancing(unsigned long n) {
    // M^n = [[a,b],[c,d]]; B_n = c (since [B_{n+1}, B_n]^T = M^n [1, 0]^T).
    mpz_class a = 1, b = 0, c = 0, d = 1; // identity
    mpz_class ma = 6, mb = -1, mc = 1, md = 0;
    while (n > 0) {
        if (n & 1) {
            mpz_class na = a * ma + b * mc, nb = a * mb + b * md;
            mpz_class nc = c * ma + d * mc, nd = c * mb + d * md;
            a = na; b = nb; c = nc; d = nd;
        }
        mpz_class sa = ma * ma + mb * mc, sb = ma * mb + mb * md;
        mpz_class sc = mc * ma + md * mc, sd = mc * mb + md * md;
        ma = sa; mb = sb; mc = sc; md = sd;
        n >>= 1;
    }
    return c;
}

} // namespace

TEST_CASE("initial balancing values") {
    const unsigned long expected[] = {0, 1, 6, 35, 204, 1189, 6930, 40391, 235416, 1372105};
    for (unsigned long n = 0; n < 10; ++n) CHECK(balancing(n) == expected[n]);
}

TEST_CASE("reference values at n = 50 and n = 100") {
    CHECK(balancing(50) == mpz_class("33496046025275818831719453356591156886"));
    CHECK(balancing(100) ==
          mpz_class("634690617699731024051899324436968422019972551432261858152300"
                    "6454985962128364"));
}

TEST_CASE("matrix-power oracle agrees with the recurrence") {
    for (unsigned long n = 0; n <= 64; ++n) CHECK(balancing(n) == matrix_balancing(n));
    for (unsigned long n : {100ul, 257ul, 500ul, 1100ul})
        CHECK(balancing(n) == matrix_balancing(n));
}

TEST_CASE("Cassini identity B_n^2 - B_{n+1} B_{n-1} = 1 for n <= 500") {
    const auto& b = balancing_prefix(502);
    for (std::size_t n = 1; n <= 500; ++n) CHECK(b[n] * b[n] - b[n + 1] * b[n - 1] == 1);
}

TEST_CASE("prefix matches single-term evaluation and enforces its cap") {
    const auto& b = balancing_prefix();
    REQUIRE(b.size() == balancing_prefix_cap);
    for (unsigned long n : {0ul, 1ul, 2ul, 77ul, 500ul, 1100ul}) CHECK(b[n] == balancing(n));
    CHECK_THROWS_AS(balancing_prefix(balancing_prefix_cap + 1), domain_error);
}

TEST_CASE("growth bounds alpha^{n-1} < B_n < alpha^n hold for 2 <= n <= 500") {
    for (unsigned long n = 2; n <= 500; ++n) CHECK(growth_bounds_hold(n));
}

TEST_CASE("Binet residual vanishes to certified tolerance") {
    for (unsigned long n = 1; n <= 200; ++n) {
        mpfr_prec_t p = static_cast<mpfr_prec_t>(4 * n + 64);
        bigfloat r = binet_residual(n, p);
        bigfloat threshold(64);
        mpfr_set_ui_2exp(threshold.raw(), 1, -2 * static_cast<long>(n), MPFR_RNDN);
        CHECK(r < threshold);
    }
}

TEST_CASE("Binet residual contract: below 2^{-precision/2}") {
    for (mpfr_prec_t p : {128, 256, 1024}) {
        bigfloat r = binet_residual(30, p);
        bigfloat threshold(64);
        mpfr_set_ui_2exp(threshold.raw(), 1, -static_cast<long>(p / 2), MPFR_RNDN);
        CHECK(r < threshold);
        CHECK(r.sgn() >= 0);
    }
}

TEST_CASE("Binet residual rejects n = 0 and tiny precision") {
    CHECK_THROWS_AS(binet_residual(0, 256), domain_error);
    CHECK_THROWS_AS(binet_residual(5, 8), domain_error);
}
