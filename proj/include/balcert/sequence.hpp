#pragma once

#include "balcert/bigfloat.hpp"
#include "balcert/realnum.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace balcert {

// B_0 = 0, B_1 = 1, B_{n+1} = 6·B_n − B_{n−1}, computed exactly.
mpz_class balancing(unsigned long n);

// Memoized prefix [B_0 .. B_{count−1}]; constructed once (thread-safe),
// read-only afterwards. count may not exceed the configured cap.
const std::vector<mpz_class>& balancing_prefix(std::size_t count = 1101);

inline constexpr std::size_t balancing_prefix_cap = 1101;

// Certified upper bound on |B_n − (α^n − β^n)/(4√2)| as evaluated with
// interval arithmetic; in exact arithmetic the difference is 0, so the bound
// is driven below 2^{−precision/2} by escalating the working precision.
bigfloat binet_residual(unsigned long n, mpfr_prec_t precision,
                        const precision_policy& policy = {});

// Certifies α^{n−1} < B_n < α^n by outward-rounded evaluation of the powers.
bool growth_bounds_hold(unsigned long n, const precision_policy& policy = {});

} // namespace balcert
