#include "balcert/search.hpp"

#include "balcert/errors.hpp"
#include "balcert/interval.hpp"
#include "balcert/sequence.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>

namespace balcert {

unsigned long a1_bound(unsigned long n1_max, const precision_policy& policy) {
    if (n1_max < 1) throw domain_error("a1_bound: n1_max must be >= 1");
    // a1 < 1 + n1·logα/log2; round the right side up to the next integer.
    real_oracle tau = oracle_tau();
    interval t = tau.eval(policy.initial, policy);
    mpfr_prec_t p = policy.initial;
    interval bound = add_ui(mul_ui(t, n1_max, p), 1, p);
    mpz_class u = ceil_hi(bound);
    return u.get_ui();
}

namespace {

void decompose_rec(const mpz_class& S, int k, unsigned long cap_exp, bool capped,
                   std::vector<unsigned long>& stack,
                   std::vector<std::vector<unsigned long>>& out) {
    if (k == 0) {
        if (S == 0) out.push_back(stack); // stack is already non-increasing
        return;
    }
    if (S <= 0) return;
    // Largest admissible exponent: 2^a ≤ S (and ≤ the running cap); smallest:
    // k·2^a ≥ S, since every remaining power is at most 2^a.
    unsigned long hi = mpz_sizeinbase(S.get_mpz_t(), 2) - 1; // floor(log2 S)
    if (capped && hi > cap_exp) hi = cap_exp;
    for (unsigned long a = hi + 1; a-- > 0;) {
        mpz_class pw = mpz_class(1) << a;
        if (pw * k < S) break; // even k copies of 2^a cannot reach S
        stack.push_back(a);
        decompose_rec(S - pw, k - 1, a, true, stack, out);
        stack.pop_back();
    }
}

std::vector<solution> solutions_for_pair(unsigned long n1, unsigned long n2, int k,
                                         unsigned long a1_max,
                                         const std::vector<mpz_class>& B) {
    std::vector<solution> out;
    mpz_class S = B[n1] + B[n2];
    if (S == 0) return out;
    for (auto& tuple : decompose_as_powers(S, k)) {
        if (tuple.front() > a1_max) continue;
        out.push_back(solution{n1, n2, std::move(tuple)});
    }
    return out;
}

void check_bounds(int k, const search_bounds& bounds) {
    if (k < 1 || k > 3) throw domain_error("solve: k must be 1, 2 or 3");
    if (bounds.n1_max + 1 > balancing_prefix_cap)
        throw domain_error("solve: n1_max exceeds the memoized sequence cap");
    unsigned long needed = a1_bound(bounds.n1_max);
    if (bounds.a1_max < needed)
        throw domain_error("solve: a1_max " + std::to_string(bounds.a1_max) +
                           " below the derived bound " + std::to_string(needed) +
                           " for n1_max " + std::to_string(bounds.n1_max));
}

} // namespace

std::vector<std::vector<unsigned long>> decompose_as_powers(const mpz_class& S, int k) {
    if (S < 1) throw domain_error("decompose_as_powers: S must be >= 1");
    if (k < 1 || k > 3) throw domain_error("decompose_as_powers: k must be 1, 2 or 3");
    std::vector<std::vector<unsigned long>> out;
    std::vector<unsigned long> stack;
    decompose_rec(S, k, 0, false, stack, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<solution> solve(int k, const search_bounds& bounds, int jobs) {
    check_bounds(k, bounds);
    const std::vector<mpz_class>& B = balancing_prefix();
    // Flatten the triangular (n1, n2) grid into independent work items.
    std::vector<std::pair<unsigned long, unsigned long>> cells;
    for (unsigned long n1 = 0; n1 <= bounds.n1_max; ++n1)
        for (unsigned long n2 = 0; n2 <= n1; ++n2) cells.emplace_back(n1, n2);

    std::vector<std::vector<solution>> slots(cells.size());
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#else
    (void)jobs;
#endif
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < static_cast<long>(cells.size()); ++i)
        slots[i] = solutions_for_pair(cells[i].first, cells[i].second, k, bounds.a1_max, B);

    std::vector<solution> out;
    for (auto& s : slots)
        for (auto& sol : s) out.push_back(std::move(sol));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<solution> solve_serial(int k, const search_bounds& bounds) {
    check_bounds(k, bounds);
    const std::vector<mpz_class>& B = balancing_prefix();
    std::vector<solution> out;
    for (unsigned long n1 = 0; n1 <= bounds.n1_max; ++n1)
        for (unsigned long n2 = 0; n2 <= n1; ++n2)
            for (auto& sol : solutions_for_pair(n1, n2, k, bounds.a1_max, B))
                out.push_back(std::move(sol));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool verify(const solution& sol) {
    if (sol.n1 < sol.n2) return false;
    if (sol.exponents.empty() || sol.exponents.size() > 3) return false;
    if (!std::is_sorted(sol.exponents.rbegin(), sol.exponents.rend())) return false;
    mpz_class lhs = balancing(sol.n1) + balancing(sol.n2);
    mpz_class rhs = 0;
    for (unsigned long a : sol.exponents) rhs += mpz_class(1) << a;
    return lhs == rhs;
}

} // namespace balcert
