#pragma once

#include "balcert/interval.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace balcert {

// Escalation schedule for certified evaluation: start at `initial` bits,
// double until certification succeeds, give up at `cap`.
struct precision_policy {
    mpfr_prec_t initial = 256;
    mpfr_prec_t cap = 1 << 16;
};

// A fixed real constant, evaluated on demand to an enclosing interval.
// The evaluator must enclose the same real at every precision and tighten as
// precision grows (directed rounding of a fixed expression tree does both).
class real_oracle {
  public:
    real_oracle(std::string label, std::function<interval(mpfr_prec_t)> fn)
        : label_(std::move(label)), fn_(std::move(fn)) {}

    const std::string& label() const { return label_; }

    // Enclosure at exactly the given working precision (no width guarantee).
    interval eval_raw(mpfr_prec_t precision) const { return fn_(precision); }

    // Enclosure with hi − lo ≤ 2^{−precision}·max(1, |hi|), escalating the
    // internal working precision as needed. Throws precision_cap_error.
    interval eval(mpfr_prec_t precision, const precision_policy& policy = {}) const;

  private:
    std::string label_;
    std::function<interval(mpfr_prec_t)> fn_;
};

// Shared constants of the problem: α = 3+√8, log α, log 2, 4√2, log(4√2),
// and τ = log α / log 2.
real_oracle oracle_sqrt_ui(unsigned long u);
real_oracle oracle_alpha();
real_oracle oracle_log_alpha();
real_oracle oracle_log2();
real_oracle oracle_four_sqrt_two();
real_oracle oracle_log_four_sqrt_two();
real_oracle oracle_tau();

struct convergent {
    std::size_t index = 0; // integer part is index 0
    mpz_class p;
    mpz_class q;
};

// First `count` partial quotients of the oracle's constant, each certified
// (floor constant across the enclosure), re-expanded from scratch at doubled
// precision until every requested quotient certifies.
std::vector<mpz_class> cf_expand(const real_oracle& oracle, std::size_t count,
                                 mpfr_prec_t precision, const precision_policy& policy = {});

// Standard p/q recurrence from partial quotients.
std::vector<convergent> convergents(const std::vector<mpz_class>& quotients);

// Convergent of least index with q > threshold.
convergent first_convergent_q_exceeding(const real_oracle& oracle, const mpz_class& threshold,
                                        mpfr_prec_t precision, const precision_policy& policy = {});

// Certified enclosure of ‖x‖ = min over integers z of |x − z|, valid for any
// input width: [0, ...] when the interval contains an integer, hi capped at
// 1/2 when it contains a half-integer.
interval nearest_int_distance(const interval& x);

} // namespace balcert
