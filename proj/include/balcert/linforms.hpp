#pragma once

#include "balcert/interval.hpp"
#include "balcert/realnum.hpp"

#include <map>
#include <vector>

namespace balcert {

// A bound of the shape c·(1+log n1)^k, with the coefficient kept as a
// certified enclosure.
struct polylog_bound {
    interval coefficient;
    unsigned exponent = 0;
};

// Numeric value of the bound at a concrete n1 (upper end is what matters).
interval polylog_eval(const polylog_bound& b, unsigned long n1, mpfr_prec_t prec);

// Expression tree for logarithmic-height upper bounds over the atoms the
// derivation uses: α = 3+√8, 2, 4√2, and explicit rationals.
class height_expr {
  public:
    static height_expr atom_alpha();
    static height_expr atom_two();
    static height_expr atom_four_sqrt_two();
    static height_expr atom_rational(long num, unsigned long den);
    static height_expr product(std::vector<height_expr> factors);
    static height_expr quotient(height_expr num, height_expr den);
    static height_expr power(height_expr base, long exponent);
    // 1 + t1 + t2 + ...: each chained addition contributes +log 2.
    static height_expr one_plus_sum(std::vector<height_expr> terms);

  private:
    enum class node { alpha, two, four_sqrt_two, rational, product, quotient, power, one_plus_sum };
    explicit height_expr(node k) : kind_(k) {}
    node kind_;
    long num_ = 0;
    unsigned long den_ = 1;
    long exp_ = 0;
    std::vector<height_expr> children_;
    friend interval height_upper_bound(const height_expr&, mpfr_prec_t);
};

// Upper bound on the logarithmic height assembled from the standard rules:
// h(α) = logα/2, h(2) = log2, h(4√2) = log(4√2), h(a/b) = log max(|a|, b),
// h(ηγ^{±1}) ≤ h(η)+h(γ), h(η^s) = |s|·h(η), h(η+γ) ≤ h(η)+h(γ)+log2.
interval height_upper_bound(const height_expr& e, mpfr_prec_t prec);

// Data fed to the lower-bound theorem for linear forms in logarithms.
struct matveev_input {
    unsigned l = 0;            // number of multiplicands
    unsigned field_degree = 0; // d_L
    std::vector<interval> A;   // l entries, each ≥ 0.16
};

// C = 1.4·30^{l+3}·l^{4.5}·d_L²·(1+log d_L)·Π A_j, outward rounded, so that
// log|Γ| > −C·(1+log D).
interval matveev_coefficient(const matveev_input& input, mpfr_prec_t prec);

// One step of the seven-step bound derivation. `priors` maps already-derived
// step numbers to their bounds (dependencies: 2←{1}, 3←{1,2}, 4←{1,2},
// 5←{1}, 6←{1,5}, 7←{1,2,4,5,6}). Additive comparison constants are absorbed
// into the coefficient using 1+log n1 > 1+log 100 (standing n1 > 100).
polylog_bound step_bound(int step, const std::map<int, polylog_bound>& priors,
                         mpfr_prec_t prec);

// Quantity each step bounds, for table/report labels.
const char* step_bound_target(int step);

// From L/(log L)^r < H (with H > (4r²)^r) conclude L < 2^r·H·(log H)^r.
interval guzman_unwrap(unsigned r, const interval& H, mpfr_prec_t prec);

// The six linear-form shapes whose nonvanishing the derivation needs.
enum class lin_form { gamma, gamma1, gammaA, gammaB, gamma2, gamma3 };

struct form_witness {
    long n1 = 0, n2 = 0, a1 = 0, a2 = 0, a3 = 0;
};

// Certifies |form| > 0 at the witness by interval evaluation at escalating
// precision. Throws precision_cap_error when undecided at the cap.
bool nonvanishing_check(lin_form form, const form_witness& w,
                        const precision_policy& policy = {});

} // namespace balcert
