#pragma once

#include "balcert/realnum.hpp"

#include <gmpxx.h>

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace balcert {

struct reduce_config {
    precision_policy policy{};
    // Convergents past the first q > 6M to try before declaring failure.
    int max_convergent_advance = 20;
    int jobs = 0; // ≤ 0: OpenMP default
};

// Instance of the reduction lemma: 0 < |uτ − v + μ| < A·B^{−w}, u ≤ M.
struct reduction_problem {
    real_oracle tau;
    real_oracle mu;
    interval A;
    interval B;
    mpz_class M;
    std::string side_condition; // textual record of the assumed minimum gap
};

// Up to three small integers parameterize a family member (unused slots 0).
using family_param = std::array<long, 3>;

// μ parameterized by integer tuples; eval must enclose the member's μ at any
// requested precision.
struct mu_family {
    std::string label;
    std::vector<family_param> params;
    std::function<interval(const family_param&, mpfr_prec_t)> eval;
};

struct family_problem {
    real_oracle tau;
    mu_family mu;
    interval A;
    interval B;
    mpz_class M;
    std::string side_condition;
};

struct reduction_outcome {
    convergent convergent_used; // convergent certifying the worst member
    double epsilon = 0;         // that member's certified ε lower bound
    long w_bound = 0;           // greatest integer < log(A·q/ε)/log B
    std::string side_condition;
    family_param worst_param{};      // member attaining w_bound
    double min_epsilon = 0;          // minimal certified ε across the family
    family_param min_epsilon_param{};
    std::size_t family_size = 1;
};

// Scalar-μ reduction: finds a convergent q > 6M with certified
// ε = ‖μq‖ − M‖τq‖ > 0 (advancing past convergents where ε ≤ 0) and derives
// the excluded-w bound. Throws reduction_failure when no convergent within
// max_convergent_advance certifies.
reduction_outcome bd_reduce(const reduction_problem& problem, const reduce_config& cfg = {});

// Family reduction: per-member bd_reduce with a deterministic fold — maximal
// w_bound wins (ties: lowest parameter index), minimal ε recorded. OpenMP
// over members.
reduction_outcome bd_reduce_family(const family_problem& problem, const reduce_config& cfg = {});

// Single-threaded reference: literally loops bd_reduce over the members.
reduction_outcome bd_reduce_family_serial(const family_problem& problem,
                                          const reduce_config& cfg = {});

// |e^Λ − 1| ≤ y with y ≤ 1/2 implies |Λ| ≤ 2y.
interval linearize_small_form(const interval& y);

// Least g ≥ 0 with A·B^{−g} ≤ 1/2 certified (B > 1).
long required_gap(const interval& A, const interval& B, mpfr_prec_t prec);

// Checked form of the linearization step: 2·A·B^{−gap}, throwing with the
// required gap named when A·B^{−gap} ≤ 1/2 cannot be certified.
interval linearized_form_bound(const interval& A, const interval& B, long gap,
                               mpfr_prec_t prec);

} // namespace balcert
