#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "paramctl/algorithms.hpp"
#include "paramctl/operators.hpp"
#include "run_context.hpp"

namespace paramctl {

double RunOutcome::fitness_at_budget(std::uint64_t budget) const {
    if (fixed_target_trace.empty() || fixed_target_trace.front().second > budget)
        throw std::invalid_argument("fitness_at_budget: budget precedes the first evaluation");
    double f = fixed_target_trace.front().first;
    for (const auto& [fitness, evals] : fixed_target_trace) {
        if (evals > budget) break;
        f = fitness;
    }
    return f;
}

// --------------------------------------------------------------- (1+1) EA

RunOutcome run_one_plus_one(const BitProblem& problem, const OneOneRatePolicy& policy,
                            std::uint64_t budget, RandomSource& rng, const RunOptions& opts) {
    const int n = problem.dimension();
    RunContext ctx(problem, budget, opts);
    BitString x = initial_point(problem, opts, rng);
    double fx = ctx.eval_full(x);

    double tag = policy.tag_init;
    const double tag_hi = policy.tag_hi > 0 ? policy.tag_hi : static_cast<double>(n) / 4.0;

    std::vector<int> flips;
    while (!ctx.should_stop()) {
        ctx.begin_generation();
        double p = 0.0;
        double child_tag = tag;
        switch (policy.kind) {
        case OneOneRatePolicy::Kind::Static:
            p = policy.rate;
            break;
        case OneOneRatePolicy::Kind::TimeDependent:
            p = time_dependent_rate(ctx.generation(), n);
            break;
        case OneOneRatePolicy::Kind::FitnessLO:
            p = fitness_dependent_rate_lo(fx);
            break;
        case OneOneRatePolicy::Kind::SelfAdaptive:
            child_tag = self_adaptive_child_rate(tag, policy.factor, policy.tag_lo, tag_hi, rng);
            p = child_tag / n;
            break;
        }
        ctx.record_param(policy.kind == OneOneRatePolicy::Kind::SelfAdaptive ? child_tag : p);
        sample_standard_mutation(n, p, rng, flips);
        const double fy = ctx.eval_flips(x, fx, flips);
        if (ctx.reached_goal()) break;
        if (problem.at_least_as_good(fy, fx)) {
            apply_flips(x, flips);
            fx = fy;
            tag = child_tag;
        }
    }
    return ctx.finish(rng.mixed_seed());
}

// -------------------------------------------------------------------- RLS

RunOutcome run_rls(const BitProblem& problem, const RlsPolicy& policy, std::uint64_t budget,
                   RandomSource& rng, const RunOptions& opts) {
    const int n = problem.dimension();
    RunContext ctx(problem, budget, opts);
    BitString x = initial_point(problem, opts, rng);
    double fx = ctx.eval_full(x);

    std::shared_ptr<DriftMaxTable> drift_table = policy.drift_table;
    LoFixedTargetResult oracle_plan;
    VelocityTable velocities(std::max(1, policy.portfolio), policy.delta, policy.eps);

    switch (policy.kind) {
    case RlsPolicy::Kind::FixedK:
        if (policy.k < 0 || policy.k > n)
            throw std::invalid_argument("rls: strength must satisfy 0 <= k <= n");
        break;
    case RlsPolicy::Kind::BestOfSet:
        oracle_plan = lo_fixed_target_dp(n, policy.strengths);
        break;
    case RlsPolicy::Kind::DriftMax:
        if (!drift_table) drift_table = std::make_shared<DriftMaxTable>(n);
        if (drift_table->dimension() != n)
            throw std::invalid_argument("rls: drift table dimension mismatch");
        break;
    case RlsPolicy::Kind::EpsGreedy:
        if (policy.portfolio < 1 || policy.portfolio > n)
            throw std::invalid_argument("rls: portfolio must be within [1, n]");
        break;
    case RlsPolicy::Kind::Mixing: {
        if (policy.mixing_weights.empty()) throw std::invalid_argument("rls: empty mixing vector");
        double sum = 0.0;
        for (double w : policy.mixing_weights) {
            if (w < 0.0) throw std::invalid_argument("rls: negative mixing weight");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("rls: mixing weights must sum to 1");
        break;
    }
    }

    std::vector<int> flips;
    while (!ctx.should_stop()) {
        ctx.begin_generation();
        int k = policy.k;
        bool with_replacement = false;
        switch (policy.kind) {
        case RlsPolicy::Kind::FixedK:
            break;
        case RlsPolicy::Kind::BestOfSet:
            k = oracle_plan.best_strength[static_cast<std::size_t>(static_cast<int>(fx))];
            break;
        case RlsPolicy::Kind::DriftMax:
            k = drift_table->strength_for(static_cast<int>(fx));
            break;
        case RlsPolicy::Kind::EpsGreedy:
            k = velocities.select(rng);
            break;
        case RlsPolicy::Kind::Mixing: {
            double u = rng.next_real();
            k = static_cast<int>(policy.mixing_weights.size());
            for (std::size_t i = 0; i < policy.mixing_weights.size(); ++i) {
                if (u < policy.mixing_weights[i]) {
                    k = static_cast<int>(i) + 1;
                    break;
                }
                u -= policy.mixing_weights[i];
            }
            with_replacement = policy.two_bit_with_replacement && k == 2;
            break;
        }
        }
        ctx.record_param(static_cast<double>(k));
        if (with_replacement)
            sample_two_bit_with_replacement(n, rng, flips);
        else
            sample_flip_k(n, k, rng, flips);
        const double fy = ctx.eval_flips(x, fx, flips);
        if (ctx.reached_goal()) {
            break;
        }
        const bool accept = problem.at_least_as_good(fy, fx);
        if (policy.kind == RlsPolicy::Kind::EpsGreedy)
            velocities.observe(k, accept ? std::abs(fy - fx) : 0.0);
        if (accept) {
            apply_flips(x, flips);
            fx = fy;
        }
    }
    return ctx.finish(rng.mixed_seed());
}

RunOutcome run_best_of_set_rls(const BitProblem& problem, std::vector<int> strengths,
                               std::uint64_t budget, RandomSource& rng, const RunOptions& opts) {
    return run_rls(problem, RlsPolicy::best_of_set(std::move(strengths)), budget, rng, opts);
}

// ------------------------------------------------------------------ RLS_Ab

RunOutcome run_rls_ab(const IntProblem& problem, double A, double b, std::uint64_t budget,
                      RandomSource& rng, std::uint64_t param_stride) {
    if (budget == 0) throw std::invalid_argument("run: budget must be positive");
    if (A <= 1.0 || b >= 1.0 || b <= 0.0)
        throw std::invalid_argument("rls_ab: require A > 1 and 0 < b < 1");
    const int n = problem.dimension();
    const double v_max = static_cast<double>(problem.alphabet_size() / 4);

    RunOutcome out;
    IntString x = random_intstring(n, problem.alphabet_size(), rng);
    double fx = problem.evaluate(x);
    out.evaluations = 1;
    out.best_fitness = fx;
    out.fixed_target_trace.emplace_back(fx, 1);
    out.success = problem.is_optimal(fx);

    std::vector<double> velocity(static_cast<std::size_t>(n), 1.0);
    while (!out.success && out.evaluations < budget) {
        ++out.generations;
        const int i = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        const int step = static_cast<int>(std::floor(velocity[static_cast<std::size_t>(i)]));
        const bool up = rng.next_bool();
        const std::int32_t candidate = step_component(x[static_cast<std::size_t>(i)], step, up,
                                                      problem.alphabet_size(),
                                                      problem.boundary_mode());
        const double fy = problem.evaluate_component_change(x, fx, i, candidate);
        ++out.evaluations;
        if (fy < out.best_fitness) {
            out.best_fitness = fy;
            out.fixed_target_trace.emplace_back(fy, out.evaluations);
        }
        if (problem.is_optimal(fy)) {
            out.success = true;
            break;
        }
        auto& v = velocity[static_cast<std::size_t>(i)];
        if (fy < fx) {
            v = std::min(v * A, v_max);
        } else {
            v = std::max(v * b, 1.0);
        }
        if (param_stride != 0 && (out.generations - 1) % param_stride == 0)
            out.parameter_trace.emplace_back(out.generations, v);
        if (fy <= fx) {
            x[static_cast<std::size_t>(i)] = candidate;
            fx = fy;
        }
    }
    out.seed = rng.mixed_seed();
    return out;
}

// --------------------------------------------------------------------- SA

double SaSchedule::temperature(std::uint64_t t) const {
    switch (kind) {
    case Kind::Constant:
        return t0;
    case Kind::Multiplicative:
        return t0 * std::pow(alpha, static_cast<double>(t - 1));
    default:
        return t0 * std::pow(alpha, static_cast<double>((t - 1) / period));
    }
}

RunOutcome run_sa(const BitProblem& problem, const SaSchedule& schedule, std::uint64_t budget,
                  RandomSource& rng, const RunOptions& opts) {
    if (problem.direction() != Direction::Maximize)
        throw std::invalid_argument("run_sa: maximizes; wrap minimization problems in NegatedProblem");
    if (schedule.t0 <= 0.0 || schedule.alpha <= 0.0)
        throw std::invalid_argument("run_sa: temperatures must stay positive");
    const int n = problem.dimension();
    RunContext ctx(problem, budget, opts);
    BitString x = initial_point(problem, opts, rng);
    double fx = ctx.eval_full(x);

    std::vector<int> flips(1);
    std::uint64_t t = 0;
    while (!ctx.should_stop()) {
        ctx.begin_generation();
        ++t;
        const double temperature = schedule.temperature(t);
        ctx.record_param(temperature);
        flips[0] = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        const double fy = ctx.eval_flips(x, fx, flips);
        if (ctx.reached_goal()) break;
        bool accept = fy >= fx;
        if (!accept) {
            const double prob = std::exp((fy - fx) / temperature);
            accept = rng.next_real() < prob;
        }
        if (accept) {
            apply_flips(x, flips);
            fx = fy;
        }
    }
    return ctx.finish(rng.mixed_seed());
}

// --------------------------------------------------------- hyper-heuristic

RunOutcome run_single_point_hh(const BitProblem& problem, const HHConfig& config,
                               std::uint64_t budget, RandomSource& rng, const RunOptions& opts) {
    if (config.strengths.empty()) throw std::invalid_argument("hh: empty portfolio");
    const int n = problem.dimension();
    const int k_ops = static_cast<int>(config.strengths.size());
    const double tau = config.tau > 0 ? config.tau : 10.0 * n;
    const double tau_cap = static_cast<double>(n) * static_cast<double>(n);
    RunContext ctx(problem, budget, opts);
    BitString x = initial_point(problem, opts, rng);
    double fx = ctx.eval_full(x);

    HHChooser chooser(config.mechanism, k_ops, tau, config.sigma, config.adjust_tau, tau_cap, rng);

    std::vector<int> flips;
    std::vector<int> best_flips;
    const auto sample_for = [&](int op_index, std::vector<int>& out) {
        const int k = config.strengths[static_cast<std::size_t>(op_index)];
        if (k == 2 && config.two_bit_with_replacement)
            sample_two_bit_with_replacement(n, rng, out);
        else
            sample_flip_k(n, k, rng, out);
    };

    while (!ctx.should_stop()) {
        ctx.begin_generation();
        const int choice = chooser.next(rng);
        double fy;
        if (choice == HHChooser::kAllOperators) {
            // greedy: evaluate one offspring per operator, keep the best
            double best_f = 0.0;
            bool have = false;
            for (int op = 0; op < k_ops && !ctx.reached_goal(); ++op) {
                sample_for(op, flips);
                const double f = ctx.eval_flips(x, fx, flips);
                if (!have || problem.better(f, best_f)) {
                    have = true;
                    best_f = f;
                    best_flips = flips;
                }
            }
            if (ctx.reached_goal()) break;
            fy = best_f;
            flips = best_flips;
        } else {
            ctx.record_param(static_cast<double>(config.strengths[static_cast<std::size_t>(choice)]));
            sample_for(choice, flips);
            fy = ctx.eval_flips(x, fx, flips);
            if (ctx.reached_goal()) break;
        }
        const bool improved = problem.better(fy, fx);
        chooser.report(improved ? IterationOutcome::Improved
                                : (fy == fx ? IterationOutcome::Equal : IterationOutcome::Worse));
        if (problem.at_least_as_good(fy, fx)) {
            apply_flips(x, flips);
            fx = fy;
        }
    }
    return ctx.finish(rng.mixed_seed());
}

} // namespace paramctl
