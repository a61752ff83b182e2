#pragma once

#include <cassert>
#include <stdexcept>

#include "paramctl/algorithms.hpp"

namespace paramctl {

/// Per-run bookkeeping shared by all run loops: evaluation counting,
/// best-so-far tracking, fixed-target trace, success detection, and the
/// budget rule (a generation in progress is completed; the first optimum
/// evaluation stops the run immediately).
class RunContext {
public:
    RunContext(const BitProblem& problem, std::uint64_t budget, const RunOptions& opts)
        : problem_(problem), budget_(budget), stride_(opts.param_stride), stop_at_(opts.stop_at) {
        if (budget == 0) throw std::invalid_argument("run: budget must be positive");
    }

    double eval_full(const BitString& x) {
        const double f = problem_.evaluate(x);
        on_value(f);
        return f;
    }

    double eval_flips(const BitString& parent, double parent_fitness, std::span<const int> flips) {
        const double f = problem_.evaluate_flipped(parent, parent_fitness, flips);
        on_value(f);
        return f;
    }

    void begin_generation() {
        ++outcome_.generations;
        if (stride_ != 0) param_due_ = (outcome_.generations - 1) % stride_ == 0;
    }

    /// Records the parameter governing the current generation (honors the
    /// trace stride; at most one row per generation).
    void record_param(double value) {
        if (stride_ != 0 && param_due_) {
            outcome_.parameter_trace.emplace_back(outcome_.generations, value);
            param_due_ = false;
        }
    }

    /// True once the run should end: the optimum was evaluated or the
    /// optional fixed-target stop was reached.
    bool reached_goal() const { return outcome_.success || target_reached_; }
    bool should_stop() const { return reached_goal() || outcome_.evaluations >= budget_; }
    std::uint64_t evaluations() const { return outcome_.evaluations; }
    std::uint64_t generation() const { return outcome_.generations; }
    double best() const { return outcome_.best_fitness; }
    const BitProblem& problem() const { return problem_; }

    RunOutcome finish(std::uint64_t seed) {
        outcome_.seed = seed;
        return std::move(outcome_);
    }

private:
    void on_value(double f) {
        ++outcome_.evaluations;
        if (outcome_.evaluations == 1 || problem_.better(f, outcome_.best_fitness)) {
            outcome_.best_fitness = f;
            outcome_.fixed_target_trace.emplace_back(f, outcome_.evaluations);
            if (problem_.is_optimal(f)) outcome_.success = true;
            if (stop_at_ && problem_.at_least_as_good(f, *stop_at_)) target_reached_ = true;
        }
    }

    const BitProblem& problem_;
    std::uint64_t budget_;
    std::uint64_t stride_;
    std::optional<double> stop_at_;
    bool target_reached_ = false;
    bool param_due_ = false;
    RunOutcome outcome_;
};

inline BitString initial_point(const BitProblem& problem, const RunOptions& opts,
                               RandomSource& rng) {
    if (opts.start != nullptr) {
        if (static_cast<int>(opts.start->size()) != problem.dimension())
            throw std::invalid_argument("run: start point has wrong dimension");
        return *opts.start;
    }
    return random_bitstring(problem.dimension(), rng);
}

} // namespace paramctl
