#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "balcert/errors.hpp"
#include "balcert/pipeline.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

using namespace balcert;

namespace {

bool inside_window(const interval& v, const char* lo, const char* hi) {
    return interval::from_decimal(lo, 64).certainly_less(v) &&
           v.certainly_less(interval::from_decimal(hi, 64));
}

const char* const m_default_str =
    "719424657981085694407744724630994345655459605403799737454390";

} // namespace

TEST_CASE("bound derivation: gates, rounding, unwrapped bound, default cutoff") {
    bound_result b = derive_upper_bound();
    REQUIRE(b.steps.size() == 7);

    struct gate {
        const char* printed;
        unsigned exponent;
    };
    const gate gates[] = {
        {"8.22e12", 1}, {"4e25", 2},    {"2e38", 3},    {"9.96e37", 3},
        {"2e25", 2},    {"9.96e37", 3}, {"4.73e50", 4},
    };
    for (int s = 1; s <= 7; ++s) {
        CAPTURE(s);
        const bound_step_record& r = b.steps[static_cast<std::size_t>(s - 1)];
        CHECK(r.step == s);
        CHECK(r.published_coefficient == gates[s - 1].printed);
        CHECK(r.published_exponent == gates[s - 1].exponent);
        CHECK(r.computed.exponent == gates[s - 1].exponent);
        CHECK(r.target == step_bound_target(s));
        interval printed = interval::from_decimal(gates[s - 1].printed, 256);
        CHECK(r.computed.coefficient.hi() <= printed.hi());
        CHECK(mul(printed, interval::from_decimal("0.9", 256), 256).lo() <=
              r.computed.coefficient.hi());
    }
    CHECK(b.steps[0].computed_rounded == "8.22e12"); // exact match after 3-sig-fig rounding
    CHECK(b.steps[1].computed_rounded == "3.90e25");
    CHECK(b.steps[6].computed_rounded == "4.38e50");

    CHECK(inside_window(b.big_h, "2.48e50", "2.4802e50"));
    CHECK(inside_window(b.n1_upper, "7.19e59", "7.195e59"));
    CHECK(inside_window(b.n1_upper, "7.5e58", "7.9e59")); // inside the published ceiling
    CHECK(b.m_default == mpz_class(m_default_str));
}

TEST_CASE("bound table json mirrors the case structure") {
    bound_result b = derive_upper_bound();
    auto j = bound_table_json(b);
    REQUIRE(j.contains("cases"));
    auto& cases = j["cases"];
    CHECK(cases["1A"]["(a1-a2)*log2"]["step"] == 1);
    CHECK(cases["1A"]["(a1-a3)*log2"]["step"] == 2);
    CHECK(cases["1A"]["(n1-n2)*log_alpha"]["step"] == 3);
    CHECK(cases["1B"]["(a1-a2)*log2"]["step"] == 1);
    CHECK(cases["1B"]["(a1-a3)*log2"]["step"] == 4);
    CHECK(cases["1B"]["(n1-n2)*log_alpha"]["step"] == 2);
    CHECK(cases["2"]["(a1-a2)*log2"]["step"] == 5);
    CHECK(cases["2"]["(a1-a3)*log2"]["step"] == 6);
    CHECK(cases["2"]["(n1-n2)*log_alpha"]["step"] == 1);
    CHECK(j["steps"].size() == 7);
    CHECK(j["steps"][0]["published_coefficient"] == "8.22e12");
    CHECK(j["steps"][0]["computed_rounded_up_3sf"] == "8.22e12");
}

TEST_CASE("reduction with the derived cutoff reproduces the pinned table") {
    reduction_result r = run_reduction(mpz_class(m_default_str));
    REQUIRE(r.runs.size() == 9);
    CHECK_FALSE(r.published_grid_tops);

    const long w[] = {212, 83, 219, 86, 87, 223, 214, 223, 91};
    const std::size_t fam[] = {1, 1, 213, 213, 24282, 18531, 84, 18060, 2213640};
    const bool a_valid[] = {true, true, true, true, true, false, false, false, false};
    for (std::size_t i = 0; i < 9; ++i) {
        CAPTURE(i);
        CHECK(r.runs[i].outcome.w_bound == w[i]);
        CHECK(r.runs[i].outcome.family_size == fam[i]);
        CHECK(r.runs[i].published_A_valid == a_valid[i]);
        CHECK(r.runs[i].outcome.epsilon > 0);
        CHECK(r.runs[i].outcome.min_epsilon > 0);
    }
    CHECK(r.final_n1_bound == 91);

    // Scalar step-1 runs certify at the convergent after q_124.
    CHECK(r.runs[0].outcome.convergent_used.index == 125);
    CHECK(r.runs[0].outcome.epsilon == doctest::Approx(0.4948157).epsilon(1e-5));
    CHECK(r.runs[2].outcome.min_epsilon == doctest::Approx(9.342728e-4).epsilon(1e-5));
    CHECK(r.runs[4].outcome.min_epsilon == doctest::Approx(3.783598e-5).epsilon(1e-5));
    CHECK(r.runs[8].outcome.min_epsilon == doctest::Approx(4.948515e-9).epsilon(1e-4));

    // Replaced coefficients for the runs whose published A is undersized.
    CHECK(inside_window(r.runs[5].a_used, "3.1739", "3.1740")); // 2.2/log2
    CHECK(inside_window(r.runs[6].a_used, "6.3478", "6.3479")); // 4.4/log2
    CHECK(inside_window(r.runs[8].a_used, "1.7312", "1.7313")); // 1.2/log2

    auto j = reduction_table_json(r);
    auto& cases = j["cases"];
    CHECK(cases["1A"]["a1-a2"]["computed"] == "212");
    CHECK(cases["1A"]["a1-a3"]["computed"] == "219");
    CHECK(cases["1A"]["n1-n2"]["computed"] == "87");
    CHECK(cases["1B"]["a1-a2"]["computed"] == "212");
    CHECK(cases["1B"]["a1-a3"]["computed"] == "223");
    CHECK(cases["1B"]["n1-n2"]["computed"] == "86");
    CHECK(cases["2"]["a1-a2"]["computed"] == "214");
    CHECK(cases["2"]["a1-a3"]["computed"] == "223");
    CHECK(cases["2"]["n1-n2"]["computed"] == "83");
    CHECK(cases["1A"]["a1-a2"]["published"] == "214");
    CHECK(cases["2"]["n1-n2"]["published"] == "84");

    // Published-gate slack: computed within +4 of each printed cell value.
    const char* quanta[] = {"a1-a2", "a1-a3", "n1-n2"};
    for (const char* cs : {"1A", "1B", "2"})
        for (const char* q : quanta) {
            long computed = std::stol(cases[cs][q]["computed"].get<std::string>());
            long published = std::stol(cases[cs][q]["published"].get<std::string>());
            CHECK(computed <= published + 4);
        }
}

TEST_CASE("reduction rejects a cutoff below the derived bound") {
    CHECK_THROWS_AS(run_reduction(mpz_class("1000000")), domain_error);
}

TEST_CASE("published-constants certificate: verdict complete, tables, ledger") {
    pipeline_config cfg;
    cfg.published_constants = true;
    auto cert = full_certificate(cfg);

    const char* keys[] = {"solutions",    "bound_table",     "n1_upper",
                          "reduction_table", "final_n1_bound", "side_conditions",
                          "discrepancies", "verdict"};
    REQUIRE(cert.size() == 8);
    std::size_t i = 0;
    for (auto it = cert.begin(); it != cert.end(); ++it, ++i) CHECK(it.key() == keys[i]);

    CHECK(cert["verdict"] == "complete");
    CHECK(cert["reduction_table"]["published_grid_tops"] == true);
    mpz_class want_m;
    mpz_ui_pow_ui(want_m.get_mpz_t(), 10, 58);
    want_m *= 79;
    CHECK(cert["reduction_table"]["M"] == want_m.get_str());

    const long w[] = {212, 83, 220, 86, 88, 220, 214, 220, 89};
    auto& runs = cert["reduction_table"]["runs"];
    REQUIRE(runs.size() == 9);
    for (std::size_t k = 0; k < 9; ++k) {
        CAPTURE(k);
        CHECK(runs[k]["w_bound"] == std::to_string(w[k]));
    }
    CHECK(cert["final_n1_bound"]["computed"] == "89");

    // Solution lists: k3 exact match, k1 carries the diff.
    auto& sols = cert["solutions"];
    CHECK(sols["k3"]["computed"].size() == 10);
    CHECK(sols["k3"]["only_computed"].empty());
    CHECK(sols["k3"]["only_published"].empty());
    CHECK(sols["k2"]["computed"].size() == 4);
    CHECK(sols["k2"]["only_computed"].empty());
    CHECK(sols["k2"]["only_published"].empty());
    CHECK(sols["k1"]["only_computed"].size() == 1);
    CHECK(sols["k1"]["only_published"].size() == 1);
    bool saw_failing = false, saw_verifying = false;
    for (auto& v : sols["k1"]["published_verification"]) {
        if (v["tuple"] == nlohmann::ordered_json({"1", "1", "0"}))
            saw_failing = (v["verifies"] == false);
        if (v["tuple"] == nlohmann::ordered_json({"1", "1", "1"}))
            saw_verifying = (v["verifies"] == true);
    }
    CHECK(saw_failing);
    CHECK(saw_verifying);

    // Side conditions: 7 reduction assumptions + the search-coverage entry,
    // each with a named discharge; required gaps never exceed the stated minima.
    auto& sides = cert["side_conditions"];
    REQUIRE(sides.size() == 8);
    const long stated[] = {7, 5, 1, 2, 3, 2, 1};
    for (std::size_t k = 0; k < sides.size(); ++k) {
        auto& sc = sides[k];
        CHECK_FALSE(sc["discharged_by"].get<std::string>().empty());
        if (k < 7) {
            for (auto& [base, gap] : sc["required_gap"].items()) {
                (void)base;
                CHECK(std::stol(gap.get<std::string>()) <= stated[k]);
            }
            CHECK_FALSE(sc["required_gap"].empty());
        }
    }

    // Discrepancy ledger: non-empty, includes the k=1 diff and the
    // undersized published coefficients.
    auto& disc = cert["discrepancies"];
    CHECK(disc.size() >= 5);
    int k1_flagged = 0, a_flagged = 0, eps_flagged = 0;
    for (auto& d : disc) {
        std::string where = d.value("where", "");
        if (where.find("k = 1") != std::string::npos) ++k1_flagged;
        if (where.find("coefficient A") != std::string::npos) ++a_flagged;
        if (where.find("epsilon") != std::string::npos) ++eps_flagged;
    }
    CHECK(k1_flagged == 1);
    CHECK(a_flagged == 4); // steps 4, 5, 6 and 7 replace the printed coefficient
    CHECK(eps_flagged >= 2);
}

TEST_CASE("a cutoff below the final bound yields an incomplete verdict") {
    pipeline_config cfg;
    cfg.n1_max = 50;
    auto cert = full_certificate(cfg);
    std::string verdict = cert["verdict"].get<std::string>();
    CHECK(verdict.rfind("incomplete", 0) == 0);
    CHECK(verdict.find("91") != std::string::npos);
    CHECK(verdict.find("50") != std::string::npos);
    CHECK(cert["final_n1_bound"]["computed"] == "91");
    CHECK(cert["final_n1_bound"]["search_cutoff"] == "50");
}
