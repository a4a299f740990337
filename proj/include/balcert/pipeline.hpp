#pragma once

#include "balcert/linforms.hpp"
#include "balcert/realnum.hpp"
#include "balcert/reduction.hpp"
#include "balcert/search.hpp"

#include "json.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace balcert {

struct pipeline_config {
    unsigned long n1_max = 100;
    int jobs = 0; // ≤ 0: OpenMP default
    precision_policy policy{};
    // Use the published reference inputs for the reduction (cutoff
    // M = 7.9e59 and the published gap ceilings) instead of the
    // self-derived ones.
    bool published_constants = false;
};

struct bound_step_record {
    int step = 0;
    std::string target;                // quantity the step bounds
    polylog_bound computed;            // certified coefficient enclosure
    std::string computed_rounded;      // upper endpoint rounded up, 3 sig. figs
    std::string published_coefficient; // gate value as published
    unsigned published_exponent = 0;
};

struct bound_result {
    std::vector<bound_step_record> steps; // steps 1..7 in order
    interval big_h;                       // step-7 coefficient / log α
    interval n1_upper;                    // unwrapped absolute bound on n1
    mpz_class m_default;                  // ceil(n1_upper): default reduction cutoff
};

// Steps 1–7 of the height-bound derivation with gate checks: a computed
// coefficient exceeding its published gate is a hard failure (domain_error).
bound_result derive_upper_bound(const pipeline_config& cfg = {});

struct reduction_run {
    int step = 0;
    std::string quantity;               // gap the run bounds
    std::string base;                   // decay base: "2" or "alpha"
    std::vector<std::string> param_names; // meaning of family_param slots
    long published_w = 0;               // published gap bound
    std::string published_A;            // coefficient as published
    bool published_A_valid = false;     // published A dominates the derived one
    interval a_used;                    // coefficient the run actually used
    reduction_outcome outcome;
};

struct reduction_result {
    mpz_class M;
    bool published_grid_tops = false;
    std::vector<reduction_run> runs; // steps 1,1',2,2',3,4,5,6,7
    long final_n1_bound = 0;         // step-7 bound on n1 itself
};

// Seven reduction steps (1 and 2 each bound two gaps) over full parameter
// grids: every family parameter is enumerated from 0 so that every
// small-gap complementary case is inside some grid. Requires M ≥ the
// derived n1 upper bound.
reduction_result run_reduction(const mpz_class& M, const pipeline_config& cfg = {});

// JSON fragments (also used by the CLI): reals as decimal strings with
// explicit precision tags, integers as decimal strings.
nlohmann::ordered_json bound_table_json(const bound_result& b);
nlohmann::ordered_json reduction_table_json(const reduction_result& r);

// Full run: exhaustive search for k = 1, 2, 3, bound derivation, reduction,
// side-condition ledger, and the machine-checkable certificate with keys
// solutions, bound_table, n1_upper, reduction_table, final_n1_bound,
// side_conditions, discrepancies, verdict.
nlohmann::ordered_json full_certificate(const pipeline_config& cfg = {});

} // namespace balcert
