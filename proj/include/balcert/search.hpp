#pragma once

#include "balcert/realnum.hpp"

#include <gmpxx.h>

#include <compare>
#include <vector>

namespace balcert {

// A tuple (n1, n2, a1 ≥ … ≥ ak) with B_{n1} + B_{n2} = Σ 2^{ai}.
struct solution {
    unsigned long n1 = 0;
    unsigned long n2 = 0;
    std::vector<unsigned long> exponents; // non-increasing, k ∈ {1,2,3}

    friend auto operator<=>(const solution& a, const solution& b) {
        if (auto c = a.n1 <=> b.n1; c != 0) return c;
        if (auto c = a.n2 <=> b.n2; c != 0) return c;
        return a.exponents <=> b.exponents;
    }
    friend bool operator==(const solution&, const solution&) = default;
};

struct search_bounds {
    unsigned long n1_max = 100;
    unsigned long a1_max = 256;
};

// Least U such that any solution with n1 ≤ n1_max has a1 ≤ U, from the
// coupling a1 < 1 + n1·logα/log2 with certified outward rounding.
unsigned long a1_bound(unsigned long n1_max, const precision_policy& policy = {});

// All non-increasing exponent tuples (a1 ≥ … ≥ ak) with S = Σ 2^{ai},
// sorted ascending; empty when no representation exists.
std::vector<std::vector<unsigned long>> decompose_as_powers(const mpz_class& S, int k);

// Complete, duplicate-free, lexicographically sorted solution list for
// n1 ≤ bounds.n1_max, exponents ≤ bounds.a1_max. jobs ≤ 0 means the OpenMP
// default. Requires bounds.a1_max ≥ a1_bound(bounds.n1_max).
std::vector<solution> solve(int k, const search_bounds& bounds, int jobs = 0);

// Single-threaded reference implementation of the same enumeration.
std::vector<solution> solve_serial(int k, const search_bounds& bounds);

// Exact integer identity check (also validates tuple shape).
bool verify(const solution& sol);

} // namespace balcert
