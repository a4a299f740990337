#include "balcert/errors.hpp"
#include "balcert/pipeline.hpp"
#include "balcert/realnum.hpp"
#include "balcert/search.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using balcert::solution;
using nlohmann::ordered_json;

std::string tuple_line(const solution& s) {
    std::string line = "(" + std::to_string(s.n1) + ", " + std::to_string(s.n2);
    for (unsigned long e : s.exponents) line += ", " + std::to_string(e);
    return line + ")";
}

ordered_json tuple_json(const solution& s) {
    ordered_json arr = ordered_json::array();
    arr.push_back(std::to_string(s.n1));
    arr.push_back(std::to_string(s.n2));
    for (unsigned long e : s.exponents) arr.push_back(std::to_string(e));
    return arr;
}

void print_search(const std::vector<solution>& sols, const std::string& format, int k,
                  const balcert::search_bounds& sb) {
    if (format == "table") {
        for (const solution& s : sols) std::cout << tuple_line(s) << "\n";
        return;
    }
    if (format == "csv") {
        std::string header = "n1,n2";
        for (int i = 1; i <= k; ++i) header += ",a" + std::to_string(i);
        std::cout << header << "\n";
        for (const solution& s : sols) {
            std::cout << s.n1 << "," << s.n2;
            for (unsigned long e : s.exponents) std::cout << "," << e;
            std::cout << "\n";
        }
        return;
    }
    ordered_json out = {{"k", k},
                        {"n1_max", std::to_string(sb.n1_max)},
                        {"a1_max", std::to_string(sb.a1_max)},
                        {"solutions", ordered_json::array()}};
    for (const solution& s : sols) out["solutions"].push_back(tuple_json(s));
    std::cout << out.dump(2) << "\n";
}

std::vector<unsigned long> parse_tuple(const std::string& text) {
    std::vector<unsigned long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        unsigned long v = std::stoul(item, &pos);
        if (pos != item.size()) throw balcert::domain_error("malformed tuple entry: " + item);
        out.push_back(v);
    }
    return out;
}

void print_bound_table_text(const balcert::bound_result& b) {
    std::printf("%-10s %-28s %-14s %-14s %s\n", "step", "bounds", "published", "computed(3sf)",
                "exponent");
    for (const balcert::bound_step_record& s : b.steps)
        std::printf("%-10d %-28s %-14s %-14s %u\n", s.step, s.target.c_str(),
                    s.published_coefficient.c_str(), s.computed_rounded.c_str(),
                    s.published_exponent);
    std::printf("n1_upper <= %s (published 7.9e59)\n",
                b.n1_upper.hi().str(10, MPFR_RNDU).c_str());
}

void print_reduction_table_text(const balcert::reduction_result& r) {
    std::printf("M = %s\n", r.M.get_str().c_str());
    std::printf("%-6s %-8s %-7s %-10s %-10s %-14s %s\n", "step", "bounds", "base", "computed",
                "published", "epsilon", "family");
    for (const balcert::reduction_run& run : r.runs)
        std::printf("%-6d %-8s %-7s %-10ld %-10ld %-14.6e %zu\n", run.step,
                    run.quantity.c_str(), run.base.c_str(), run.outcome.w_bound,
                    run.published_w, run.outcome.epsilon, run.outcome.family_size);
    std::printf("final n1 bound: %ld\n", r.final_n1_bound);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"balancing numbers vs sums of three powers of two: search, bounds, "
                 "reduction, certificate"};
    app.require_subcommand(1);
    app.fallthrough();

    long precision = 256;
    long precision_cap = 65536;
    int jobs = 0;
    bool paper_constants = false;
    app.add_option("--precision", precision, "initial working precision in bits")
        ->capture_default_str();
    app.add_option("--precision-cap", precision_cap, "escalation ceiling in bits")
        ->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads (0 = library default)")
        ->capture_default_str();
    app.add_flag("--paper-constants", paper_constants,
                 "use the published cutoff M = 7.9e59 and published grid ceilings");

    auto* cmd_search = app.add_subcommand("search", "exhaustive solution search");
    int k = 3;
    unsigned long n1_max = 100;
    std::string a1_max = "auto";
    std::string format = "table";
    cmd_search->add_option("--k", k, "number of powers of two")->required()->check(CLI::Range(1, 3));
    cmd_search->add_option("--n1-max", n1_max, "search ceiling for n1")->required();
    cmd_search->add_option("--a1-max", a1_max, "exponent ceiling, or 'auto'")
        ->capture_default_str();
    cmd_search->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();

    auto* cmd_verify = app.add_subcommand("verify", "check one tuple exactly");
    int vk = 0;
    std::string tuple_text;
    cmd_verify->add_option("--k", vk, "number of powers of two")->required()->check(CLI::Range(1, 3));
    cmd_verify->add_option("--solution", tuple_text, "n1,n2,a1[,a2[,a3]]")->required();

    auto* cmd_bounds = app.add_subcommand("bounds", "height-bound table and the absolute n1 bound");
    std::string bounds_format = "table";
    cmd_bounds->add_option("--format", bounds_format)->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();

    auto* cmd_reduce = app.add_subcommand("reduce", "gap-bound reduction table and final n1 bound");
    std::string m_text;
    std::string reduce_format = "table";
    cmd_reduce->add_option("--M", m_text, "reduction cutoff (decimal integer)");
    cmd_reduce->add_option("--format", reduce_format)->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();

    auto* cmd_certify = app.add_subcommand("certify", "full machine-checkable certificate");
    std::string out_path;
    cmd_certify->add_option("--out", out_path, "write the certificate to this file");

    CLI11_PARSE(app, argc, argv);

    balcert::precision_policy policy{precision, precision_cap};
    if (precision < 64 || precision_cap < precision) {
        std::cerr << "error: require 64 <= precision <= precision-cap\n";
        return 1;
    }
    balcert::pipeline_config cfg{100, jobs, policy, paper_constants};

    try {
        if (cmd_search->parsed()) {
            balcert::search_bounds sb;
            sb.n1_max = n1_max;
            sb.a1_max = a1_max == "auto" ? balcert::a1_bound(n1_max, policy)
                                         : std::stoul(a1_max);
            print_search(balcert::solve(k, sb, jobs), format, k, sb);
            return 0;
        }
        if (cmd_verify->parsed()) {
            std::vector<unsigned long> vals = parse_tuple(tuple_text);
            if (vals.size() != static_cast<std::size_t>(vk) + 2)
                throw balcert::domain_error("expected " + std::to_string(vk + 2) +
                                            " comma-separated values for k = " +
                                            std::to_string(vk));
            solution s{vals[0], vals[1],
                       std::vector<unsigned long>(vals.begin() + 2, vals.end())};
            bool ok = balcert::verify(s);
            std::cout << tuple_line(s) << (ok ? " verifies" : " fails") << "\n";
            return ok ? 0 : 1;
        }
        if (cmd_bounds->parsed()) {
            balcert::bound_result b = balcert::derive_upper_bound(cfg);
            if (bounds_format == "json") {
                ordered_json out = balcert::bound_table_json(b);
                out["n1_upper"] = {{"lo", b.n1_upper.lo().str(25, MPFR_RNDD)},
                                   {"hi", b.n1_upper.hi().str(25, MPFR_RNDU)},
                                   {"prec_bits", static_cast<long>(b.n1_upper.prec())}};
                std::cout << out.dump(2) << "\n";
            } else {
                print_bound_table_text(b);
            }
            return 0;
        }
        if (cmd_reduce->parsed()) {
            mpz_class M;
            if (!m_text.empty()) {
                if (M.set_str(m_text, 10) != 0)
                    throw balcert::domain_error("--M is not a decimal integer: " + m_text);
            } else if (cfg.published_constants) {
                mpz_ui_pow_ui(M.get_mpz_t(), 10, 58);
                M *= 79;
            } else {
                M = balcert::derive_upper_bound(cfg).m_default;
            }
            balcert::reduction_result r = balcert::run_reduction(M, cfg);
            if (reduce_format == "json")
                std::cout << balcert::reduction_table_json(r).dump(2) << "\n";
            else
                print_reduction_table_text(r);
            return 0;
        }
        // certify
        ordered_json cert = balcert::full_certificate(cfg);
        std::string text = cert.dump(2) + "\n";
        if (!out_path.empty()) {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw balcert::domain_error("cannot open output file: " + out_path);
            f << text;
        } else {
            std::cout << text;
        }
        std::string verdict = cert["verdict"].get<std::string>();
        if (verdict != "complete") {
            std::cerr << "verdict: " << verdict << "\n";
            return 1;
        }
        return 0;
    } catch (const balcert::precision_cap_error& e) {
        std::cerr << "precision cap exhausted: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
