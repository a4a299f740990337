#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "balcert/errors.hpp"
#include "balcert/linforms.hpp"

#include <map>

using namespace balcert;

namespace {

constexpr mpfr_prec_t P = 256;

bool overlaps(const interval& a, const interval& b) {
    return !(a.hi() < b.lo()) && !(b.hi() < a.lo());
}

bool inside_window(const interval& v, const char* lo, const char* hi) {
    return interval::from_decimal(lo, 64).certainly_less(v) &&
           v.certainly_less(interval::from_decimal(hi, 64));
}

std::map<int, polylog_bound> derive_steps() {
    std::map<int, polylog_bound> b;
    for (int s = 1; s <= 7; ++s) b[s] = step_bound(s, b, P);
    return b;
}

} // namespace

TEST_CASE("polylog_eval matches direct arithmetic and is monotone in n1") {
    polylog_bound b{interval::exact_ui(2, P), 1};
    interval v = polylog_eval(b, 100, P);
    CHECK(inside_window(v, "11.2103", "11.2104")); // 2(1 + log 100)
    CHECK(polylog_eval(b, 100, P).certainly_less(polylog_eval(b, 200, P)));
    polylog_bound cubic{interval::exact_ui(1, P), 3};
    CHECK(polylog_eval(cubic, 3, P).certainly_less(polylog_eval(cubic, 4, P)));
    CHECK_THROWS_AS(polylog_eval(b, 0, P), domain_error);
}

TEST_CASE("height atoms evaluate to their exact heights") {
    CHECK(inside_window(height_upper_bound(height_expr::atom_alpha(), P),
                        "0.88137358701", "0.88137358702")); // log(alpha)/2
    CHECK(inside_window(height_upper_bound(height_expr::atom_two(), P),
                        "0.69314718055", "0.69314718056")); // log 2
    CHECK(inside_window(height_upper_bound(height_expr::atom_four_sqrt_two(), P),
                        "1.73286795139", "1.73286795140")); // log(4*sqrt(2))
    CHECK(inside_window(height_upper_bound(height_expr::atom_rational(3, 2), P),
                        "1.0986", "1.0987")); // log 3
    CHECK(inside_window(height_upper_bound(height_expr::atom_rational(-5, 3), P),
                        "1.6094", "1.6095")); // log 5
    CHECK(inside_window(height_upper_bound(height_expr::atom_rational(1, 7), P),
                        "1.9459", "1.9460")); // log 7
    CHECK_THROWS_AS(height_upper_bound(height_expr::atom_rational(3, 0), P), domain_error);
    CHECK(height_upper_bound(height_expr::atom_rational(0, 1), P).hi().sgn() == 0); // log 1
}

TEST_CASE("height composition rules") {
    auto alpha = height_expr::atom_alpha;
    auto two = height_expr::atom_two;
    auto fst = height_expr::atom_four_sqrt_two;
    interval ha = height_upper_bound(alpha(), P);
    interval h2 = height_upper_bound(two(), P);
    interval hf = height_upper_bound(fst(), P);

    // Product bound never exceeds the sum of the factor bounds.
    interval hp = height_upper_bound(height_expr::product({alpha(), two()}), P);
    CHECK_FALSE(add(ha, h2, P).certainly_less(hp));
    CHECK(overlaps(hp, add(ha, h2, P)));

    // Quotient behaves like a product; integer powers scale by |s|.
    interval hq = height_upper_bound(height_expr::quotient(alpha(), two()), P);
    CHECK(overlaps(hq, add(ha, h2, P)));
    interval hpow = height_upper_bound(height_expr::power(alpha(), -3), P);
    CHECK(overlaps(hpow, mul_ui(ha, 3, P)));

    // 4sqrt2 * (2^5 + 1): log(4sqrt2) + 5 log2 + log2.
    interval hd = height_upper_bound(
        height_expr::product({fst(), height_expr::one_plus_sum({height_expr::power(two(), 5)})}),
        P);
    interval want = add(hf, mul_ui(h2, 6, P), P);
    CHECK(overlaps(hd, want));

    // (1 + alpha^3) / (4sqrt2 * (2^5 + 1)): 3 log(alpha)/2 + log(4sqrt2) + 6 log2.
    interval hs = height_upper_bound(
        height_expr::quotient(
            height_expr::one_plus_sum({height_expr::power(alpha(), 3)}),
            height_expr::product(
                {fst(), height_expr::one_plus_sum({height_expr::power(two(), 5)})})),
        P);
    want = add(add(mul_ui(ha, 3, P), hf, P), mul_ui(h2, 7, P), P);
    CHECK(overlaps(hs, want));
}

TEST_CASE("matveev coefficient: pure formula spot value") {
    matveev_input in;
    in.l = 2;
    in.field_degree = 1;
    in.A = {interval::exact_ui(1, P), interval::exact_ui(1, P)};
    interval c = matveev_coefficient(in, P);
    // 1.4 * 30^5 * 2^4.5 = 34020000 * sqrt(512)
    interval want = mul(mul(interval::from_decimal("1.4", P), pow_ui(interval::exact_ui(30, P), 5, P), P),
                        sqrt_ui(512, P), P);
    CHECK(overlaps(c, want));
    CHECK(inside_window(c, "7.697e8", "7.699e8"));
}

TEST_CASE("matveev coefficient is monotone in each A_j and in the degree") {
    matveev_input base;
    base.l = 3;
    base.field_degree = 2;
    base.A = {interval::from_decimal("1.76", P), interval::from_decimal("1.39", P),
              interval::from_decimal("3.47", P)};
    interval c0 = matveev_coefficient(base, P);
    for (std::size_t j = 0; j < 3; ++j) {
        matveev_input pert = base;
        pert.A[j] = mul(pert.A[j], interval::from_decimal("1.01", P), P);
        CHECK(c0.certainly_less(matveev_coefficient(pert, P)));
    }
    matveev_input deg = base;
    deg.field_degree = 3;
    CHECK(c0.certainly_less(matveev_coefficient(deg, P)));
}

TEST_CASE("matveev coefficient validates its input") {
    matveev_input in;
    in.l = 1;
    in.field_degree = 1;
    in.A = {interval::exact_ui(1, P)};
    CHECK_THROWS_AS(matveev_coefficient(in, P), domain_error);
    in.l = 2;
    in.A = {interval::exact_ui(1, P), interval::from_decimal("0.1", P)};
    CHECK_THROWS_AS(matveev_coefficient(in, P), domain_error); // A_j < 0.16
    in.A = {interval::exact_ui(1, P)};
    CHECK_THROWS_AS(matveev_coefficient(in, P), domain_error); // size != l
    in.A = {interval::exact_ui(1, P), interval::exact_ui(1, P)};
    in.field_degree = 0;
    CHECK_THROWS_AS(matveev_coefficient(in, P), domain_error);
}

TEST_CASE("step coefficients sit inside their two-sided gates") {
    auto b = derive_steps();
    struct gate {
        int step;
        const char* printed;
        unsigned exponent;
    };
    const gate gates[] = {
        {1, "8.22e12", 1}, {2, "4e25", 2},    {3, "2e38", 3},    {4, "9.96e37", 3},
        {5, "2e25", 2},    {6, "9.96e37", 3}, {7, "4.73e50", 4},
    };
    for (const auto& g : gates) {
        CAPTURE(g.step);
        const polylog_bound& pb = b.at(g.step);
        CHECK(pb.exponent == g.exponent);
        interval printed = interval::from_decimal(g.printed, P);
        interval floor90 = mul(printed, interval::from_decimal("0.9", P), P);
        CHECK(pb.coefficient.hi() <= printed.hi());
        CHECK(floor90.lo() <= pb.coefficient.hi());
        CHECK(pb.coefficient.certainly_positive());
    }
    // Step 1 has the tighter published window.
    CHECK(inside_window(b.at(1).coefficient, "8.1e12", "8.22e12"));
}

TEST_CASE("step targets and dependency validation") {
    CHECK(std::string(step_bound_target(1)) == "min{(a1-a2)log2, (n1-n2)log alpha}");
    CHECK(std::string(step_bound_target(3)) == "(n1-n2)log alpha");
    CHECK(std::string(step_bound_target(7)) == "n1 log alpha");
    CHECK_THROWS_AS(step_bound(2, {}, P), domain_error);  // needs step 1
    CHECK_THROWS_AS(step_bound(7, {}, P), domain_error);
    CHECK_THROWS_AS(step_bound(0, {}, P), domain_error);
    CHECK_THROWS_AS(step_bound(8, {}, P), domain_error);
}

TEST_CASE("guzman_unwrap evaluates the unwrapped bound") {
    interval h6 = interval::from_decimal("1e6", P);
    interval v = guzman_unwrap(1, h6, P);
    CHECK(inside_window(v, "2.763e7", "2.7632e7")); // 2e6 * log(1e6)
    CHECK(h6.certainly_less(v));                    // guzman(r, H) > H

    for (unsigned r : {1u, 2u, 4u}) {
        interval h = interval::from_decimal("1e12", P);
        CHECK(h.certainly_less(guzman_unwrap(r, h, P)));
    }
    CHECK_THROWS_AS(guzman_unwrap(4, interval::exact_ui(10, P), P), domain_error);
    CHECK_THROWS_AS(guzman_unwrap(0, h6, P), domain_error);
}

TEST_CASE("guzman_unwrap reproduces the published absolute bound") {
    interval h = div(interval::from_decimal("4.73e50", P), oracle_log_alpha().eval(P), P);
    interval v = guzman_unwrap(4, h, P);
    CHECK(inside_window(v, "7.5e59", "7.9e59"));
    CHECK(inside_window(v, "7.80e59", "7.81e59")); // direct evaluation ~7.8048e59
}

TEST_CASE("nonvanishing certifies all six forms at sample witnesses") {
    form_witness w{5, 3, 4, 2, 1};
    for (lin_form f : {lin_form::gamma, lin_form::gamma1, lin_form::gammaA, lin_form::gammaB,
                       lin_form::gamma2, lin_form::gamma3}) {
        CHECK(nonvanishing_check(f, w));
    }
    CHECK(nonvanishing_check(lin_form::gamma, {101, 0, 256, 0, 0}));
    CHECK(nonvanishing_check(lin_form::gamma, {2, 0, 2, 0, 0}));
    CHECK(nonvanishing_check(lin_form::gamma3, {90, 3, 250, 100, 7}));
    CHECK_THROWS_AS(nonvanishing_check(lin_form::gamma, {2, 5, 2, 0, 0}), domain_error);
}
