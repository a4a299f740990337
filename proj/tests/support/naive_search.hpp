#pragma once

// Independent reference enumeration for the search module: build every sum
// B_{n1} + B_{n2} directly from the recurrence, build every power sum
// 2^{a1} + ... + 2^{ak} by nested loops, and intersect the two by exact
// integer lookup. Shares no decomposition logic with the library.

#include "balcert/search.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace testsupport {

inline std::vector<balcert::solution> naive_solve(int k, unsigned long n1_max,
                                                  unsigned long a1_max) {
    std::vector<mpz_class> b(n1_max + 1);
    b[0] = 0;
    if (n1_max >= 1) b[1] = 1;
    for (unsigned long n = 2; n <= n1_max; ++n) b[n] = 6 * b[n - 1] - b[n - 2];

    std::map<mpz_class, std::vector<std::pair<unsigned long, unsigned long>>> pair_sums;
    for (unsigned long n1 = 0; n1 <= n1_max; ++n1)
        for (unsigned long n2 = 0; n2 <= n1; ++n2)
            pair_sums[b[n1] + b[n2]].push_back({n1, n2});

    std::vector<balcert::solution> out;
    auto emit = [&](const mpz_class& s, std::vector<unsigned long> exps) {
        auto it = pair_sums.find(s);
        if (it == pair_sums.end()) return;
        for (auto [n1, n2] : it->second) out.push_back({n1, n2, exps});
    };

    mpz_class p1, p2, p3;
    for (unsigned long a1 = 0; a1 <= a1_max; ++a1) {
        mpz_ui_pow_ui(p1.get_mpz_t(), 2, a1);
        if (k == 1) {
            emit(p1, {a1});
            continue;
        }
        for (unsigned long a2 = 0; a2 <= a1; ++a2) {
            mpz_ui_pow_ui(p2.get_mpz_t(), 2, a2);
            if (k == 2) {
                emit(p1 + p2, {a1, a2});
                continue;
            }
            for (unsigned long a3 = 0; a3 <= a2; ++a3) {
                mpz_ui_pow_ui(p3.get_mpz_t(), 2, a3);
                emit(p1 + p2 + p3, {a1, a2, a3});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Every non-increasing exponent tuple with sum S, by brute-force nested loops
// over exponents up to the bit length of S.
inline std::vector<std::vector<unsigned long>> naive_decompose(const mpz_class& S, int k) {
    std::vector<std::vector<unsigned long>> out;
    if (S <= 0) return out;
    unsigned long top = mpz_sizeinbase(S.get_mpz_t(), 2); // 2^top > S/ k always reached
    mpz_class p1, p2, p3;
    for (unsigned long a1 = 0; a1 <= top; ++a1) {
        mpz_ui_pow_ui(p1.get_mpz_t(), 2, a1);
        if (k == 1) {
            if (p1 == S) out.push_back({a1});
            continue;
        }
        for (unsigned long a2 = 0; a2 <= a1; ++a2) {
            mpz_ui_pow_ui(p2.get_mpz_t(), 2, a2);
            if (k == 2) {
                if (p1 + p2 == S) out.push_back({a1, a2});
                continue;
            }
            for (unsigned long a3 = 0; a3 <= a2; ++a3) {
                mpz_ui_pow_ui(p3.get_mpz_t(), 2, a3);
                if (p1 + p2 + p3 == S) out.push_back({a1, a2, a3});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace testsupport
