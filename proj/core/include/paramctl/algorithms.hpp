#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "paramctl/controllers.hpp"
#include "paramctl/genome.hpp"
#include "paramctl/oracles.hpp"
#include "paramctl/problems.hpp"
#include "paramctl/rng.hpp"

namespace paramctl {

/// Result of one budgeted run. `evaluations` is the sequential optimization
/// time when the run succeeded (the optimum stops the run the moment it is
/// evaluated); `generations` is the parallel time. The fixed-target trace
/// records (fitness, first-hitting evaluation count) for every strict
/// improvement of the best-so-far fitness, starting with the initial sample.
struct RunOutcome {
    std::uint64_t evaluations = 0;
    std::uint64_t generations = 0;
    double best_fitness = 0.0;
    bool success = false;
    std::vector<std::pair<double, std::uint64_t>> fixed_target_trace;
    std::vector<std::pair<std::uint64_t, double>> parameter_trace;
    std::uint64_t seed = 0;
    std::uint64_t communication_effort = 0; // island model only

    /// Best fitness first evaluated within the given evaluation budget,
    /// reconstructed from the fixed-target trace.
    double fitness_at_budget(std::uint64_t budget) const;
};

struct RunOptions {
    std::uint64_t param_stride = 0;   // 0 = no parameter trace
    const BitString* start = nullptr; // nullptr = uniform random start
    /// Optional early stop once the best-so-far fitness reaches this value
    /// (fixed-target experiments); does not affect the success flag.
    std::optional<double> stop_at;
};

// ------------------------------------------------------------- (1+1) EA

struct OneOneRatePolicy {
    enum class Kind { Static, TimeDependent, FitnessLO, SelfAdaptive };
    Kind kind = Kind::Static;
    double rate = 0.0;     // Static
    double factor = 2.0;   // SelfAdaptive: multiplier A
    double tag_init = 2.0; // SelfAdaptive: initial rate numerator r (rate r/n)
    double tag_lo = 2.0;   // SelfAdaptive caps
    double tag_hi = 0.0;   // <= 0 means n/4

    static OneOneRatePolicy static_rate(double p) { return {Kind::Static, p, 0, 0, 0, 0}; }
    static OneOneRatePolicy time_dependent() { return {Kind::TimeDependent, 0, 0, 0, 0, 0}; }
    static OneOneRatePolicy fitness_lo() { return {Kind::FitnessLO, 0, 0, 0, 0, 0}; }
    static OneOneRatePolicy self_adaptive(double A, double r0, double lo, double hi) {
        return {Kind::SelfAdaptive, 0, A, r0, lo, hi};
    }
};

/// Elitist (1+1) EA with standard bit mutation; acceptance keeps the
/// offspring whenever it is at least as good.
RunOutcome run_one_plus_one(const BitProblem& problem, const OneOneRatePolicy& policy,
                            std::uint64_t budget, RandomSource& rng, const RunOptions& opts = {});

// ------------------------------------------------------------------ RLS

struct RlsPolicy {
    enum class Kind { FixedK, BestOfSet, DriftMax, EpsGreedy, Mixing };
    Kind kind = Kind::FixedK;
    int k = 1;                                  // FixedK
    std::vector<int> strengths = {1, 2, 3};     // BestOfSet
    std::shared_ptr<DriftMaxTable> drift_table; // DriftMax; created on demand if null
    double eps = 0.0;                           // EpsGreedy exploration rate
    double delta = 0.0;                         // EpsGreedy forgetting rate
    int portfolio = 1;                          // EpsGreedy strengths 1..portfolio
    std::vector<double> mixing_weights;         // Mixing over strengths 1..K
    bool two_bit_with_replacement = false;      // Mixing: with-replacement 2-bit variant

    static RlsPolicy fixed(int k) {
        RlsPolicy p;
        p.kind = Kind::FixedK;
        p.k = k;
        return p;
    }
    static RlsPolicy best_of_set(std::vector<int> strengths) {
        RlsPolicy p;
        p.kind = Kind::BestOfSet;
        p.strengths = std::move(strengths);
        return p;
    }
    static RlsPolicy drift_maximizing(std::shared_ptr<DriftMaxTable> table = nullptr) {
        RlsPolicy p;
        p.kind = Kind::DriftMax;
        p.drift_table = std::move(table);
        return p;
    }
    static RlsPolicy eps_greedy(double eps, double delta, int portfolio) {
        RlsPolicy p;
        p.kind = Kind::EpsGreedy;
        p.eps = eps;
        p.delta = delta;
        p.portfolio = portfolio;
        return p;
    }
    static RlsPolicy mixing(std::vector<double> weights, bool with_replacement_two = false) {
        RlsPolicy p;
        p.kind = Kind::Mixing;
        p.mixing_weights = std::move(weights);
        p.two_bit_with_replacement = with_replacement_two;
        return p;
    }
};

/// Randomized local search: one flip-set mutation per generation, offspring
/// kept iff at least as good.
RunOutcome run_rls(const BitProblem& problem, const RlsPolicy& policy, std::uint64_t budget,
                   RandomSource& rng, const RunOptions& opts = {});

/// RLS over LeadingOnes that flips, at fitness level i, the strength from
/// the given set that the fixed-target oracle proves optimal at that level.
RunOutcome run_best_of_set_rls(const BitProblem& problem, std::vector<int> strengths,
                               std::uint64_t budget, RandomSource& rng,
                               const RunOptions& opts = {});

/// Success-based per-coordinate mutation strengths (RLS_{A,b}) on an
/// r-valued problem; velocities live in [1, floor(r/4)].
RunOutcome run_rls_ab(const IntProblem& problem, double A, double b, std::uint64_t budget,
                      RandomSource& rng, std::uint64_t param_stride = 0);

// --------------------------------------------------------------- (1+la)

struct OplRatePolicy {
    enum class Kind { Static, TwoRate, FitnessDependent };
    Kind kind = Kind::Static;
    double rate = 0.0;   // Static
    double r_init = 2.0; // TwoRate initial rate numerator

    static OplRatePolicy static_rate(double p) { return {Kind::Static, p, 0}; }
    static OplRatePolicy two_rate(double r0 = 2.0) { return {Kind::TwoRate, 0, r0}; }
    static OplRatePolicy fitness_dependent() { return {Kind::FitnessDependent, 0, 0}; }
};

enum class SuccessCounting { Strict, AtLeastAsGood };

struct OplLambdaPolicy {
    enum class Kind { Static, Doubling };
    Kind kind = Kind::Static;
    DoublingScheme scheme = DoublingScheme::DoubleOrReset;
    SuccessCounting counting = SuccessCounting::Strict;

    static OplLambdaPolicy fixed() { return {Kind::Static, DoublingScheme::DoubleOrReset, SuccessCounting::Strict}; }
    static OplLambdaPolicy doubling(DoublingScheme s, SuccessCounting c) { return {Kind::Doubling, s, c}; }
};

/// (1+lambda) EA: lambda offspring by standard bit mutation, the best
/// offspring replaces the parent iff at least as good. The 2-rate variant
/// creates half the offspring at r/(2n) and half at 2r/n and adapts r.
RunOutcome run_one_plus_lambda(const BitProblem& problem, int lambda, const OplRatePolicy& rate,
                               const OplLambdaPolicy& lambda_policy, std::uint64_t budget,
                               RandomSource& rng, const RunOptions& opts = {});

// ----------------------------------------------------- (1+(la,la)) GA

struct GaLambdaPolicy {
    enum class Kind { Static, FitnessDependent, OneFifth };
    Kind kind = Kind::OneFifth;
    double lambda0 = 1.0;
    double update_strength = 1.5; // F for the one-fifth rule

    static GaLambdaPolicy fixed(double lambda) { return {Kind::Static, lambda, 0}; }
    static GaLambdaPolicy fitness_dependent() { return {Kind::FitnessDependent, 1.0, 0}; }
    static GaLambdaPolicy one_fifth(double F = 1.5, double lambda0 = 1.0) {
        return {Kind::OneFifth, lambda0, F};
    }
};

/// (1+(lambda,lambda)) GA with p = lambda/n and c = 1/lambda: lambda mutants
/// at a Bin(n,p) radius, then lambda biased crossovers between the parent and
/// the mutation winner; 2*lambda evaluations per generation.
RunOutcome run_ollga(const BitProblem& problem, const GaLambdaPolicy& policy, std::uint64_t budget,
                     RandomSource& rng, const RunOptions& opts = {});

// --------------------------------------------------------------- (mu+1)

/// (mu+1) EA with rank-based mutation rates (rank 1 = best, p_min = 1/n,
/// p_max = 1); removal uniform among the worst.
RunOutcome run_mu_plus_one_rank(const BitProblem& problem, int mu, std::uint64_t budget,
                                RandomSource& rng, const RunOptions& opts = {});

// ------------------------------------------------------------------- SA

struct SaSchedule {
    enum class Kind { Constant, Multiplicative, Stepwise };
    Kind kind = Kind::Constant;
    double t0 = 1.0;
    double alpha = 1.0;       // decay factor per step (or per period)
    std::uint64_t period = 1; // Stepwise: generations between decays

    static SaSchedule metropolis(double temperature) { return {Kind::Constant, temperature, 1.0, 1}; }
    static SaSchedule multiplicative(double t0, double alpha) {
        return {Kind::Multiplicative, t0, alpha, 1};
    }
    static SaSchedule stepwise(double t0, double alpha, std::uint64_t period) {
        return {Kind::Stepwise, t0, alpha, period};
    }

    double temperature(std::uint64_t t) const;
};

/// Simulated Annealing / Metropolis on a maximization problem: one-bit
/// neighbors, Boltzmann acceptance exp((f(y)-f(x))/T_t) for worse moves.
/// Minimization problems go through a negation adapter before this call.
RunOutcome run_sa(const BitProblem& problem, const SaSchedule& schedule, std::uint64_t budget,
                  RandomSource& rng, const RunOptions& opts = {});

// --------------------------------------------------- self-adaptive (1,la)

/// Self-adaptive (1,lambda) EA: every offspring first mutates its inherited
/// rate numerator by *A or /A (uniformly), then applies standard bit
/// mutation with the new rate r'/n. Comma selection; fitness ties prefer the
/// smaller rate, then the smaller index.
RunOutcome run_self_adaptive_ocl(const BitProblem& problem, int lambda, double A, double rate_lo,
                                 double rate_hi, std::uint64_t budget, RandomSource& rng,
                                 const RunOptions& opts = {});

// ------------------------------------------------- non-elitist portfolio

enum class PortfolioSelection { Uniform, Tournament2, Best };

/// Non-elitist self-adaptive portfolio EA (Dang-Lehre): each of the lambda
/// new individuals is created by selecting a parent, switching its rate to a
/// random different one with probability switch_p, and mutating with the
/// (possibly new) rate.
RunOutcome run_non_elitist_portfolio(const BitProblem& problem, int lambda,
                                     const std::vector<double>& rates, double switch_p,
                                     PortfolioSelection selection, std::uint64_t budget,
                                     RandomSource& rng, const RunOptions& opts = {});

// ---------------------------------------------------- hyper-heuristics

struct HHConfig {
    HHMechanism mechanism = HHMechanism::SimpleRandom;
    std::vector<int> strengths = {1, 2};
    /// The advanced-mechanism results use the 2-bit operator that draws two
    /// positions with replacement; the classic mixing results use distinct
    /// positions.
    bool two_bit_with_replacement = true;
    double tau = 0.0; // phase length for (sigma-)generalized random gradient
    int sigma = 1;
    bool adjust_tau = false;
};

/// Single-point selection hyper-heuristic over k-bit flip operators with
/// elitist acceptance. The greedy mechanism evaluates the whole portfolio
/// each generation and costs |portfolio| evaluations; all others cost one.
RunOutcome run_single_point_hh(const BitProblem& problem, const HHConfig& config,
                               std::uint64_t budget, RandomSource& rng,
                               const RunOptions& opts = {});

// ---------------------------------------------------------- island model

enum class Topology { Ring, Grid, Torus, Complete };

/// Parallel (1+1) EA with lambda islands and success-based migration
/// intervals. Islands run synchronous generations; broadcasts follow the
/// scheme ((2tau,1) broadcasts improvements instantly). Incoming strictly
/// better individuals replace incumbents. communication_effort counts one
/// unit per transmitted individual per edge.
RunOutcome run_island_model(const BitProblem& problem, int islands, Topology topology,
                            MigrationScheme scheme, std::uint64_t budget, RandomSource& rng,
                            const RunOptions& opts = {});

} // namespace paramctl
