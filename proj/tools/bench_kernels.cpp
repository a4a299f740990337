// Wall-clock comparison of the OpenMP kernels against their serial reference
// implementations, with agreement checks on the results.

#include "balcert/realnum.hpp"
#include "balcert/reduction.hpp"
#include "balcert/search.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

namespace {

double run_ms(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

balcert::mu_family bench_family(long g_top) {
    balcert::mu_family f;
    f.label = "bench";
    for (long g = 0; g <= g_top; ++g) f.params.push_back({g, 0, 0});
    f.eval = [](const balcert::family_param& prm, mpfr_prec_t p) {
        mpz_class v = (mpz_class(1) << static_cast<unsigned long>(prm[0])) + 1;
        balcert::interval num =
            balcert::add(balcert::oracle_log_four_sqrt_two().eval_raw(p),
                         balcert::log(balcert::interval::exact_mpz(v, p), p), p);
        return balcert::neg(balcert::div(num, balcert::oracle_log2().eval_raw(p), p));
    };
    return f;
}

} // namespace

int main() {
    std::printf("%-44s %12s %12s %9s %6s\n", "kernel", "serial_ms", "parallel_ms", "speedup",
                "agree");

    {
        balcert::search_bounds sb{100, balcert::a1_bound(100)};
        std::vector<balcert::solution> serial, parallel;
        double ts = run_ms([&] { serial = balcert::solve_serial(3, sb); });
        double tp = run_ms([&] { parallel = balcert::solve(3, sb); });
        std::printf("%-44s %12.1f %12.1f %9.2f %6s\n", "search k=3 n1<=100", ts, tp, ts / tp,
                    serial == parallel ? "yes" : "NO");
    }

    {
        mpz_class M;
        mpz_ui_pow_ui(M.get_mpz_t(), 10, 58);
        M *= 79;
        balcert::family_problem prob{balcert::oracle_tau(),
                                     bench_family(150),
                                     balcert::interval::from_decimal("40", 256),
                                     balcert::interval::exact_ui(2, 256),
                                     M,
                                     "bench"};
        balcert::reduction_outcome serial{}, parallel{};
        double ts = run_ms([&] { serial = balcert::bd_reduce_family_serial(prob); });
        double tp = run_ms([&] { parallel = balcert::bd_reduce_family(prob); });
        bool agree = serial.w_bound == parallel.w_bound && serial.epsilon == parallel.epsilon &&
                     serial.min_epsilon == parallel.min_epsilon &&
                     serial.worst_param == parallel.worst_param &&
                     serial.convergent_used.index == parallel.convergent_used.index;
        std::printf("%-44s %12.1f %12.1f %9.2f %6s\n", "bd_reduce_family 151 members", ts, tp,
                    ts / tp, agree ? "yes" : "NO");
    }
    return 0;
}
