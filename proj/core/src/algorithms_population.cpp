#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "paramctl/algorithms.hpp"
#include "paramctl/operators.hpp"
#include "run_context.hpp"

namespace paramctl {

// --------------------------------------------------------------- (1+la) EA

RunOutcome run_one_plus_lambda(const BitProblem& problem, int lambda, const OplRatePolicy& rate,
                               const OplLambdaPolicy& lambda_policy, std::uint64_t budget,
                               RandomSource& rng, const RunOptions& opts) {
    if (lambda < 1) throw std::invalid_argument("(1+lambda): lambda must be >= 1");
    if (rate.kind == OplRatePolicy::Kind::TwoRate && (lambda % 2 != 0 || lambda < 2))
        throw std::invalid_argument("(1+lambda) 2-rate: lambda must be even and >= 2");
    const int n = problem.dimension();
    RunContext ctx(problem, budget, opts);
    BitString x = initial_point(problem, opts, rng);
    double fx = ctx.eval_full(x);

    TwoRateState two_rate{rate.r_init, 2.0, static_cast<double>(n) / 4.0};

    std::vector<int> flips;
    std::vector<int> best_flips;
    while (!ctx.should_stop()) {
        ctx.begin_generation();
        ctx.record_param(rate.kind == OplRatePolicy::Kind::TwoRate
                             ? two_rate.r
                             : static_cast<double>(lambda));
        double best_f = 0.0;
        int best_index = -1;
        int successes = 0;
        for (int i = 0; i < lambda; ++i) {
            double p;
            switch (rate.kind) {
            case OplRatePolicy::Kind::Static:
                p = rate.rate;
                break;
            case OplRatePolicy::Kind::TwoRate:
                p = i < lambda / 2 ? two_rate.r / (2.0 * n) : 2.0 * two_rate.r / n;
                break;
            default:
                p = fitness_dependent_rate_opl(fx, lambda, n);
                break;
            }
            sample_standard_mutation(n, p, rng, flips);
            const double fy = ctx.eval_flips(x, fx, flips);
            if (best_index < 0 || problem.better(fy, best_f)) {
                best_index = i;
                best_f = fy;
                best_flips = flips;
            }
            if (lambda_policy.counting == SuccessCounting::Strict ? problem.better(fy, fx)
                                                                  : problem.at_least_as_good(fy, fx))
                ++successes;
            if (ctx.reached_goal()) break;
        }
        if (ctx.reached_goal()) break;
        if (problem.at_least_as_good(best_f, fx)) {
            apply_flips(x, best_flips);
            fx = best_f;
        }
        if (rate.kind == OplRatePolicy::Kind::TwoRate) {
            const WinnerHalf winner = best_index < lambda / 2 ? WinnerHalf::Low : WinnerHalf::High;
            two_rate_update(two_rate, winner, rng);
        }
        if (lambda_policy.kind == OplLambdaPolicy::Kind::Doubling)
            lambda = offspring_doubling_update(lambda, successes, lambda_policy.scheme);
    }
    return ctx.finish(rng.mixed_seed());
}

// --------------------------------------------------------- (1+(la,la)) GA

RunOutcome run_ollga(const BitProblem& problem, const GaLambdaPolicy& policy, std::uint64_t budget,
                     RandomSource& rng, const RunOptions& opts) {
    const int n = problem.dimension();
    RunContext ctx(problem, budget, opts);
    BitString x = initial_point(problem, opts, rng);
    double fx = ctx.eval_full(x);

    OneFifthRule rule{policy.lambda0, policy.update_strength, 1.0, static_cast<double>(n), 5.0};
    double lambda_real = policy.lambda0;

    std::vector<int> mutant;
    std::vector<int> winner_mutant;
    std::vector<int> cross;
    std::vector<int> winner_cross;
    while (!ctx.should_stop()) {
        ctx.begin_generation();
        if (policy.kind == GaLambdaPolicy::Kind::FitnessDependent)
            lambda_real = static_cast<double>(fitness_dependent_lambda_ga(fx, n));
        else if (policy.kind == GaLambdaPolicy::Kind::OneFifth)
            lambda_real = rule.value;
        ctx.record_param(lambda_real);
        const int lam = round_lambda(lambda_real);
        const double p = static_cast<double>(lam) / n;
        const double c = 1.0 / static_cast<double>(lam);

        // Mutation phase: lam offspring at the same Bin(n, p) radius.
        const int radius = rng.binomial(n, p);
        double best_mut = 0.0;
        bool have_mut = false;
        for (int i = 0; i < lam; ++i) {
            sample_flip_k(n, radius, rng, mutant);
            const double f = ctx.eval_flips(x, fx, mutant);
            if (!have_mut || problem.better(f, best_mut)) {
                have_mut = true;
                best_mut = f;
                winner_mutant = mutant;
            }
            if (ctx.reached_goal()) break;
        }
        if (ctx.reached_goal()) break;

        // Crossover phase: biased crossover only differs from the parent on
        // the mutation winner's flip set.
        double best_cross = 0.0;
        bool have_cross = false;
        for (int i = 0; i < lam; ++i) {
            sample_biased_subset(winner_mutant, c, rng, cross);
            const double f = ctx.eval_flips(x, fx, cross);
            if (!have_cross || problem.better(f, best_cross)) {
                have_cross = true;
                best_cross = f;
                winner_cross = cross;
            }
            if (ctx.reached_goal()) break;
        }
        if (ctx.reached_goal()) break;

        IterationOutcome outcome;
        if (problem.better(best_cross, fx))
            outcome = IterationOutcome::Improved;
        else if (best_cross == fx)
            outcome = IterationOutcome::Equal;
        else
            outcome = IterationOutcome::Worse;
        if (problem.at_least_as_good(best_cross, fx)) {
            apply_flips(x, winner_cross);
            fx = best_cross;
        }
        if (policy.kind == GaLambdaPolicy::Kind::OneFifth) ga_lambda_update(rule, outcome);
    }
    return ctx.finish(rng.mixed_seed());
}

// ----------------------------------------------------------------- (mu+1)

RunOutcome run_mu_plus_one_rank(const BitProblem& problem, int mu, std::uint64_t budget,
                                RandomSource& rng, const RunOptions& opts) {
    if (mu < 2) throw std::invalid_argument("(mu+1): mu must be >= 2");
    const int n = problem.dimension();
    RunContext ctx(problem, budget, opts);

    struct Member {
        BitString genotype;
        double fitness;
        std::uint64_t order; // insertion order; ties in rank share by stable order
    };
    std::vector<Member> population;
    population.reserve(static_cast<std::size_t>(mu) + 1);
    std::uint64_t next_order = 0;
    for (int i = 0; i < mu && !ctx.reached_goal(); ++i) {
        BitString g = initial_point(problem, opts, rng);
        const double f = ctx.eval_full(g);
        population.push_back({std::move(g), f, next_order++});
    }

    const double p_min = 1.0 / n;
    const double p_max = 1.0;
    std::vector<int> flips;
    while (!ctx.should_stop()) {
        ctx.begin_generation();
        const auto parent_idx =
            static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(mu)));
        const Member& parent = population[parent_idx];
        int rank = 1;
        for (const auto& m : population) {
            if (problem.better(m.fitness, parent.fitness) ||
                (m.fitness == parent.fitness && m.order < parent.order))
                ++rank;
        }
        const double p = rank_based_rate(rank, mu, p_min, p_max);
        ctx.record_param(p);
        sample_standard_mutation(n, p, rng, flips);
        const double fy = ctx.eval_flips(parent.genotype, parent.fitness, flips);
        if (ctx.reached_goal()) break;
        BitString child = parent.genotype;
        apply_flips(child, flips);
        population.push_back({std::move(child), fy, next_order++});
        // remove one individual chosen uniformly among the worst
        double worst = population.front().fitness;
        for (const auto& m : population)
            if (problem.better(worst, m.fitness)) worst = m.fitness;
        int count = 0;
        for (const auto& m : population) count += (m.fitness == worst);
        int pick = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(count)));
        for (std::size_t i = 0; i < population.size(); ++i) {
            if (population[i].fitness == worst && pick-- == 0) {
                population.erase(population.begin() + static_cast<std::ptrdiff_t>(i));
                break;
            }
        }
    }
    return ctx.finish(rng.mixed_seed());
}

// -------------------------------------------- self-adaptive (1,la) EA

RunOutcome run_self_adaptive_ocl(const BitProblem& problem, int lambda, double A, double rate_lo,
                                 double rate_hi, std::uint64_t budget, RandomSource& rng,
                                 const RunOptions& opts) {
    if (lambda < 2) throw std::invalid_argument("self-adaptive (1,lambda): lambda must be >= 2");
    if (A < 2.0) throw std::invalid_argument("self-adaptive (1,lambda): factor must be >= 2");
    const int n = problem.dimension();
    if (rate_hi <= 0) rate_hi = static_cast<double>(n) / 4.0;
    RunContext ctx(problem, budget, opts);
    BitString x = initial_point(problem, opts, rng);
    double fx = ctx.eval_full(x);
    double rate = std::clamp(2.0, rate_lo, rate_hi);

    std::vector<int> flips;
    std::vector<int> best_flips;
    while (!ctx.should_stop()) {
        ctx.begin_generation();
        ctx.record_param(rate);
        double best_f = 0.0;
        double best_rate = 0.0;
        bool have = false;
        for (int i = 0; i < lambda; ++i) {
            const double child_rate = self_adaptive_child_rate(rate, A, rate_lo, rate_hi, rng);
            sample_standard_mutation(n, child_rate / n, rng, flips);
            const double fy = ctx.eval_flips(x, fx, flips);
            // comma selection; fitness ties prefer the smaller rate, then
            // the smaller index
            if (!have || problem.better(fy, best_f) || (fy == best_f && child_rate < best_rate)) {
                have = true;
                best_f = fy;
                best_rate = child_rate;
                best_flips = flips;
            }
            if (ctx.reached_goal()) break;
        }
        if (ctx.reached_goal()) break;
        apply_flips(x, best_flips); // parent always replaced
        fx = best_f;
        rate = best_rate;
    }
    return ctx.finish(rng.mixed_seed());
}

// ------------------------------------------------ non-elitist portfolio

RunOutcome run_non_elitist_portfolio(const BitProblem& problem, int lambda,
                                     const std::vector<double>& rates, double switch_p,
                                     PortfolioSelection selection, std::uint64_t budget,
                                     RandomSource& rng, const RunOptions& opts) {
    if (rates.empty()) throw std::invalid_argument("portfolio: empty rate set");
    if (lambda < 1) throw std::invalid_argument("portfolio: lambda must be >= 1");
    if (switch_p < 0.0 || switch_p > 1.0)
        throw std::invalid_argument("portfolio: switch probability in [0,1]");
    const int n = problem.dimension();
    const int k = static_cast<int>(rates.size());
    RunContext ctx(problem, budget, opts);

    struct Member {
        BitString genotype;
        double fitness;
        int rate_index;
    };
    std::vector<Member> population;
    population.reserve(static_cast<std::size_t>(lambda));
    for (int i = 0; i < lambda && !ctx.reached_goal(); ++i) {
        BitString g = initial_point(problem, opts, rng);
        const double f = ctx.eval_full(g);
        population.push_back({std::move(g), f, static_cast<int>(rng.next_below(rates.size()))});
    }

    const auto select_parent = [&]() -> const Member& {
        switch (selection) {
        case PortfolioSelection::Uniform:
            return population[rng.next_below(population.size())];
        case PortfolioSelection::Tournament2: {
            const auto& a = population[rng.next_below(population.size())];
            const auto& b = population[rng.next_below(population.size())];
            return problem.better(b.fitness, a.fitness) ? b : a;
        }
        default: {
            std::size_t best = 0;
            for (std::size_t i = 1; i < population.size(); ++i)
                if (problem.better(population[i].fitness, population[best].fitness)) best = i;
            return population[best];
        }
        }
    };

    std::vector<Member> next;
    next.reserve(static_cast<std::size_t>(lambda));
    std::vector<int> flips;
    while (!ctx.should_stop()) {
        ctx.begin_generation();
        next.clear();
        for (int i = 0; i < lambda; ++i) {
            const Member& parent = select_parent();
            int rate_index = parent.rate_index;
            if (k > 1 && rng.bernoulli(switch_p)) {
                // a random different rate
                int shift = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k - 1)));
                rate_index = (rate_index + shift) % k;
            }
            sample_standard_mutation(n, rates[static_cast<std::size_t>(rate_index)], rng, flips);
            const double fy = ctx.eval_flips(parent.genotype, parent.fitness, flips);
            BitString child = parent.genotype;
            apply_flips(child, flips);
            next.push_back({std::move(child), fy, rate_index});
            if (ctx.reached_goal()) break;
        }
        if (ctx.reached_goal()) break;
        population.swap(next);
    }
    return ctx.finish(rng.mixed_seed());
}

} // namespace paramctl
