#include "balcert/reduction.hpp"

#include "balcert/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <atomic>
#include <optional>
#include <utility>

namespace balcert {

namespace {

std::string param_str(const family_param& p) {
    return "(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + "," +
           std::to_string(p[2]) + ")";
}

// Shared per-problem state: convergents of τ past q > 6M and certified
// enclosures of M·‖τ·q_j‖ for every convergent a reduction may advance to.
struct tau_context {
    std::vector<convergent> cvs;
    std::size_t j0 = 0;            // least index with q > 6M
    std::vector<interval> q_exact; // q_{j0+r} as exact intervals
    std::vector<interval> m_dist;  // M·‖τ·q_{j0+r}‖, certified tight
};

// Certified enclosure of M·‖τ·q‖ with relative width ≤ 2^{−64}. τ·q needs
// ~2·log2(q) bits before the enclosure separates ‖τ·q‖ (≈1/q) from zero, so
// escalation past the initial precision is the normal path for large q.
interval m_dist_enclosure(const real_oracle& tau, const mpz_class& q, const mpz_class& M,
                          mpfr_prec_t floor_prec, const precision_policy& policy) {
    for (mpfr_prec_t p = floor_prec;; p *= 2) {
        if (p > policy.cap)
            throw precision_cap_error("reduction: M*dist(tau*q) not certified at cap " +
                                      std::to_string(policy.cap));
        interval t = mul(tau.eval(p, policy), interval::exact_mpz(q, p), p);
        interval md = mul(nearest_int_distance(t), interval::exact_mpz(M, p), p);
        bigfloat gate(p);
        mpfr_abs(gate.raw(), md.hi().raw(), MPFR_RNDU);
        if (mpfr_cmp_ui(gate.raw(), 1) < 0) mpfr_set_ui(gate.raw(), 1, MPFR_RNDN);
        mpfr_mul_2si(gate.raw(), gate.raw(), -64, MPFR_RNDD);
        if (md.width() <= gate) return md;
    }
}

tau_context make_tau_context(const real_oracle& tau, const mpz_class& M,
                             const reduce_config& cfg) {
    mpz_class six_m = 6 * M;
    tau_context ctx;
    for (std::size_t count = 32;; count *= 2) {
        ctx.cvs = convergents(cf_expand(tau, count, cfg.policy.initial, cfg.policy));
        std::optional<std::size_t> j0;
        for (const convergent& c : ctx.cvs)
            if (c.q > six_m) {
                j0 = c.index;
                break;
            }
        if (j0 && ctx.cvs.size() > *j0 + static_cast<std::size_t>(cfg.max_convergent_advance)) {
            ctx.j0 = *j0;
            break;
        }
        if (count > 16384)
            throw reduction_failure("reduction: no convergent with q > 6M within 16384 quotients");
    }
    std::size_t n = static_cast<std::size_t>(cfg.max_convergent_advance) + 1;
    ctx.q_exact.reserve(n);
    ctx.m_dist.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
        const mpz_class& q = ctx.cvs[ctx.j0 + r].q;
        ctx.q_exact.push_back(interval::exact_mpz(q, cfg.policy.initial));
        ctx.m_dist.push_back(m_dist_enclosure(tau, q, M, cfg.policy.initial, cfg.policy));
    }
    return ctx;
}

struct member_result {
    std::size_t j_rel = 0; // convergent offset from j0
    double eps = 0;        // certified ε lower bound, rounded down
};

// Walk convergents from q > 6M until ε = ‖μq‖ − M‖τq‖ certifies positive;
// escalate precision whenever the sign of ε is undecided.
member_result reduce_member(const std::function<interval(mpfr_prec_t)>& mu_eval,
                            const tau_context& ctx, const real_oracle& tau, const mpz_class& M,
                            const reduce_config& cfg, const std::string& who) {
    for (std::size_t r = 0; r < ctx.m_dist.size(); ++r) {
        for (mpfr_prec_t p = cfg.policy.initial;; p *= 2) {
            if (p > cfg.policy.cap)
                throw precision_cap_error("bd_reduce(" + who +
                                          "): sign of epsilon undecided at cap " +
                                          std::to_string(cfg.policy.cap));
            interval mu = mu_eval(p);
            interval q = p == cfg.policy.initial
                             ? ctx.q_exact[r]
                             : interval::exact_mpz(ctx.cvs[ctx.j0 + r].q, p);
            interval dist = nearest_int_distance(mul(mu, q, p));
            interval m_dist = p == cfg.policy.initial
                                  ? ctx.m_dist[r]
                                  : m_dist_enclosure(tau, ctx.cvs[ctx.j0 + r].q, M, p, cfg.policy);
            interval eps = sub(dist, m_dist, p);
            if (eps.lo().sgn() > 0)
                return member_result{r, eps.lo().to_double(MPFR_RNDD)};
            if (eps.hi().sgn() <= 0) break; // certainly ≤ 0: advance convergent
        }
    }
    throw reduction_failure("bd_reduce(" + who + "): no positive epsilon within " +
                            std::to_string(ctx.m_dist.size()) + " convergents past q > 6M");
}

// Greatest integer strictly below log(A·q/ε)/log B, computed outward (A and
// q up, ε down, log B down) so the exclusion stays valid.
long w_bound_from(const interval& A, const interval& B, const mpz_class& q, double eps,
                  mpfr_prec_t p) {
    bigfloat e = bigfloat::from_double(eps, p);
    interval eps_iv(e, e);
    interval x = div(mul(A, interval::exact_mpz(q, p), p), eps_iv, p);
    x = div(log(x, p), log(B, p), p);
    mpz_class w = ceil_hi(x) - 1;
    return w.get_si();
}

void check_problem(const interval& A, const interval& B, const mpz_class& M) {
    if (!A.certainly_positive()) throw domain_error("reduction: A must be > 0");
    if (!(B.lo() > bigfloat::from_ui(1, 64))) throw domain_error("reduction: B must be > 1");
    if (M < 1) throw domain_error("reduction: M must be >= 1");
}

// Deterministic fold over family members: global minimal ε (ties: lowest
// member index) plus the per-convergent minimal ε, from which the maximal
// w_bound member is derived exactly.
struct fold_state {
    bool any = false;
    double min_eps = 0;
    std::size_t min_idx = 0;
    std::vector<bool> seen;
    std::vector<std::pair<double, std::size_t>> per_j; // (min ε, member idx)

    void absorb(std::size_t idx, const member_result& m) {
        if (per_j.size() <= m.j_rel) {
            per_j.resize(m.j_rel + 1);
            seen.resize(m.j_rel + 1, false);
        }
        auto& slot = per_j[m.j_rel];
        if (!seen[m.j_rel] || m.eps < slot.first || (m.eps == slot.first && idx < slot.second))
            slot = {m.eps, idx};
        seen[m.j_rel] = true;
        if (!any || m.eps < min_eps || (m.eps == min_eps && idx < min_idx)) {
            min_eps = m.eps;
            min_idx = idx;
        }
        any = true;
    }

    void merge(const fold_state& o) {
        for (std::size_t j = 0; j < o.per_j.size(); ++j)
            if (j < o.seen.size() && o.seen[j])
                absorb(o.per_j[j].second, member_result{j, o.per_j[j].first});
    }
};

reduction_outcome outcome_from_fold(const fold_state& fs, const tau_context& ctx,
                                    const interval& A, const interval& B,
                                    const std::vector<family_param>& params,
                                    const std::string& side, const reduce_config& cfg) {
    reduction_outcome out;
    out.side_condition = side;
    out.family_size = params.size();
    out.min_epsilon = fs.min_eps;
    out.min_epsilon_param = params[fs.min_idx];
    bool first = true;
    std::size_t best_idx = 0;
    for (std::size_t j = 0; j < fs.per_j.size(); ++j) {
        if (!(j < fs.seen.size() && fs.seen[j])) continue;
        long w = w_bound_from(A, B, ctx.cvs[ctx.j0 + j].q, fs.per_j[j].first,
                              cfg.policy.initial);
        std::size_t idx = fs.per_j[j].second;
        if (first || w > out.w_bound || (w == out.w_bound && idx < best_idx)) {
            out.w_bound = w;
            out.epsilon = fs.per_j[j].first;
            out.worst_param = params[idx];
            out.convergent_used = ctx.cvs[ctx.j0 + j];
            best_idx = idx;
            first = false;
        }
    }
    return out;
}

} // namespace

reduction_outcome bd_reduce(const reduction_problem& problem, const reduce_config& cfg) {
    check_problem(problem.A, problem.B, problem.M);
    tau_context ctx = make_tau_context(problem.tau, problem.M, cfg);
    auto mu_eval = [&problem](mpfr_prec_t p) { return problem.mu.eval_raw(p); };
    member_result m =
        reduce_member(mu_eval, ctx, problem.tau, problem.M, cfg, problem.mu.label());
    fold_state fs;
    fs.absorb(0, m);
    std::vector<family_param> single{family_param{}};
    return outcome_from_fold(fs, ctx, problem.A, problem.B, single, problem.side_condition, cfg);
}

reduction_outcome bd_reduce_family(const family_problem& problem, const reduce_config& cfg) {
    check_problem(problem.A, problem.B, problem.M);
    if (problem.mu.params.empty())
        throw domain_error("bd_reduce_family(" + problem.mu.label + "): empty parameter list");
    tau_context ctx = make_tau_context(problem.tau, problem.M, cfg);

    const auto& params = problem.mu.params;
    std::atomic<bool> failed{false};
    std::optional<std::string> failure;
#ifdef _OPENMP
    if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
    std::vector<fold_state> partials(static_cast<std::size_t>(omp_get_max_threads()));
#else
    std::vector<fold_state> partials(1);
#endif

#pragma omp parallel
    {
#ifdef _OPENMP
        fold_state& mine = partials[static_cast<std::size_t>(omp_get_thread_num())];
#else
        fold_state& mine = partials[0];
#endif
#pragma omp for schedule(static)
        for (long i = 0; i < static_cast<long>(params.size()); ++i) {
            if (failed.load(std::memory_order_relaxed)) continue;
            const family_param& prm = params[static_cast<std::size_t>(i)];
            auto mu_eval = [&problem, &prm](mpfr_prec_t p) { return problem.mu.eval(prm, p); };
            try {
                member_result m = reduce_member(mu_eval, ctx, problem.tau, problem.M, cfg,
                                                problem.mu.label + param_str(prm));
                mine.absorb(static_cast<std::size_t>(i), m);
            } catch (const std::exception& e) {
#pragma omp critical
                {
                    if (!failure) failure = e.what();
                }
                failed.store(true, std::memory_order_relaxed);
            }
        }
    }
    if (failure)
        throw reduction_failure("bd_reduce_family(" + problem.mu.label + "): " + *failure);

    fold_state fs;
    for (const fold_state& p : partials) fs.merge(p);
    return outcome_from_fold(fs, ctx, problem.A, problem.B, params, problem.side_condition, cfg);
}

reduction_outcome bd_reduce_family_serial(const family_problem& problem,
                                          const reduce_config& cfg) {
    check_problem(problem.A, problem.B, problem.M);
    if (problem.mu.params.empty())
        throw domain_error("bd_reduce_family(" + problem.mu.label + "): empty parameter list");
    tau_context ctx = make_tau_context(problem.tau, problem.M, cfg);
    fold_state fs;
    for (std::size_t i = 0; i < problem.mu.params.size(); ++i) {
        const family_param& prm = problem.mu.params[i];
        auto mu_eval = [&problem, &prm](mpfr_prec_t p) { return problem.mu.eval(prm, p); };
        try {
            member_result m = reduce_member(mu_eval, ctx, problem.tau, problem.M, cfg,
                                            problem.mu.label + param_str(prm));
            fs.absorb(i, m);
        } catch (const precision_cap_error&) {
            throw;
        } catch (const std::exception& e) {
            throw reduction_failure("bd_reduce_family(" + problem.mu.label + "): " +
                                    std::string(e.what()));
        }
    }
    return outcome_from_fold(fs, ctx, problem.A, problem.B, problem.mu.params,
                             problem.side_condition, cfg);
}

interval linearize_small_form(const interval& y) {
    bigfloat half = bigfloat::from_double(0.5, 64);
    if (y.hi() > half)
        throw domain_error("linearize_small_form: |e^L - 1| bound " + y.hi().str(6, MPFR_RNDU) +
                           " exceeds 1/2; a stronger minimum-gap side condition is required");
    return mul_2si(y, 1, y.prec());
}

long required_gap(const interval& A, const interval& B, mpfr_prec_t prec) {
    if (!(B.lo() > bigfloat::from_ui(1, 64))) throw domain_error("required_gap: B must be > 1");
    bigfloat half = bigfloat::from_double(0.5, 64);
    for (long g = 0; g <= 4096; ++g) {
        interval t = mul(A, pow_si(B, -g, prec), prec);
        if (!(t.hi() > half)) return g;
    }
    throw domain_error("required_gap: no gap up to 4096 certifies A*B^-g <= 1/2");
}

interval linearized_form_bound(const interval& A, const interval& B, long gap, mpfr_prec_t prec) {
    interval y = mul(A, pow_si(B, -gap, prec), prec);
    bigfloat half = bigfloat::from_double(0.5, 64);
    if (y.hi() > half)
        throw domain_error("linearized_form_bound: gap " + std::to_string(gap) +
                           " too small; side condition requires gap >= " +
                           std::to_string(required_gap(A, B, prec)));
    return mul_2si(y, 1, prec);
}

} // namespace balcert
