#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "paramctl/rng.hpp"

namespace paramctl {

enum class IterationOutcome { Improved, Equal, Worse };

/// Multiplicative success-based rule: divide by F on success, multiply by
/// F^(1/(s-1)) otherwise, clamped to [lo, hi]. With the default s = 5 one
/// success followed by four failures restores the value exactly, which is
/// the classic 1/5-th rule calibration.
struct OneFifthRule {
    double value;
    double update_strength; // F > 1
    double lo;
    double hi;
    double success_rate = 5.0; // s; failure exponent is 1/(s-1)

    double on_success();
    double on_failure();
};

/// Offspring population size update of the self-adjusting genetic algorithm:
/// shrink by F when the best fitness strictly improved, grow by F^(1/4)
/// otherwise, with lambda in [1, n].
double ga_lambda_update(OneFifthRule& state, IterationOutcome outcome);

/// Rounds the real-valued lambda where an integer is required: fractional
/// part below 1/2 rounds down, otherwise up.
int round_lambda(double lambda);

enum class DoublingScheme { DoubleOrReset, DoubleOrHalve, Jansen };

/// Success-based offspring population sizes: double lambda after an
/// unsuccessful generation, otherwise reset to 1 / halve / divide by the
/// success count s (floored, never below 1).
int offspring_doubling_update(int lambda, int successes, DoublingScheme scheme);

enum class WinnerHalf { Low, High };

struct TwoRateState {
    double r;     // rate numerator; offspring use r/(2n) and 2r/n
    double r_min; // 2
    double r_max; // n/4
};

/// With probability 1/4 halve r, with probability 1/4 double it, otherwise
/// inherit the rate class the winning offspring was created with; always
/// capped to [2, n/4]. Returns the new r.
double two_rate_update(TwoRateState& state, WinnerHalf winner, RandomSource& rng);

/// Linear interpolation p_min + (p_max - p_min)(i - 1)/m for the i-th ranked
/// parent of a (mu+1) EA; rank 1 is the best individual and m = mu.
double rank_based_rate(int rank, int mu, double p_min, double p_max);

/// Time-dependent rate cycle 2^j / n for j = (t-1) mod K with
/// K = ceil(log2 n) - 1, keeping the rate at most 1/2 before resetting.
double time_dependent_rate(std::uint64_t t, int n);

/// p = 1/(LO(x)+1), the optimal fitness-dependent rate on LeadingOnes.
double fitness_dependent_rate_lo(double fitness);

/// p = max{1/n, ln(lambda) / (n ln(e n/(n - f)))} for the (1+lambda) EA on
/// OneMax. Requires f < n.
double fitness_dependent_rate_opl(double fitness, int lambda, int n);

/// lambda = ceil(sqrt(n/(n - f))) capped at n for the (1+(lambda,lambda)) GA
/// on OneMax. Requires f < n.
int fitness_dependent_lambda_ga(double fitness, int n);

/// Self-adaptive rate mutation: r/A or r*A with probability 1/2 each, then
/// clamped to [lo, hi].
double self_adaptive_child_rate(double r, double factor, double lo, double hi, RandomSource& rng);

/// Probability matching over a portfolio of k values: selection
/// probabilities p_i = p_min + (1 - k p_min) c_i / sum_j c_j, confidences
/// updated as c_i <- (1-alpha) c_i + alpha * reward for the played value.
class ProbabilityMatching {
public:
    ProbabilityMatching(int k, double p_min, double alpha);

    int select(RandomSource& rng) const;
    void update(int chosen, double reward);

    const std::vector<double>& probabilities() const { return prob_; }
    const std::vector<double>& confidences() const { return conf_; }

private:
    void recompute();
    double p_min_;
    double alpha_;
    std::vector<double> conf_;
    std::vector<double> prob_;
};

/// Adaptive pursuit: same confidences as probability matching, but the
/// probabilities chase a winner-takes-all target: the argmax-confidence arm
/// moves toward p_max, all others toward p_min. With the default
/// p_max = 1 - (k-1) p_min the distribution keeps summing to one.
class AdaptivePursuit {
public:
    AdaptivePursuit(int k, double p_min, double p_max, double alpha, double beta);

    int select(RandomSource& rng) const;
    void update(int chosen, double reward);

    const std::vector<double>& probabilities() const { return prob_; }
    const std::vector<double>& confidences() const { return conf_; }

private:
    double p_min_, p_max_, alpha_, beta_;
    std::vector<double> conf_;
    std::vector<double> prob_;
};

/// UCB selection with a sliding reward window: plays every arm once, then
/// maximizes ER(i) + sqrt(c * log(2 sum_j n_j / n_i)) with ER and the play
/// counts taken over the last W observations. Ties break to the lowest index.
class UcbSelector {
public:
    UcbSelector(int k, double c, int window);

    int select() const;
    void update(int chosen, double reward);

    double estimated_reward(int arm) const;
    std::uint64_t play_count(int arm) const { return counts_[static_cast<std::size_t>(arm)]; }

private:
    double c_;
    std::size_t window_;
    std::deque<std::pair<int, double>> history_;
    std::vector<std::uint64_t> counts_;
    std::vector<double> sums_;
};

/// Time-discounted progress averages (velocities) for the eps-greedy RLS:
/// v_t[r] is the discounted average of the fitness progresses observed when
/// strength r was played, with weights (1-delta)^(t-s).
class VelocityTable {
public:
    VelocityTable(int k, double forgetting_rate, double exploration_rate);

    /// Records one iteration: the played strength (1-based) and its progress.
    /// All stored weights decay by (1-delta); the played strength gains
    /// weight 1 on the new observation.
    void observe(int strength, double progress);

    /// eps-greedy choice: with probability eps a uniform strength, otherwise
    /// the velocity argmax. Unplayed strengths count as +infinity so each arm
    /// is explored at least once; ties break to the smallest strength.
    int select(RandomSource& rng) const;

    double velocity(int strength) const;
    int portfolio_size() const { return static_cast<int>(num_.size()); }
    double exploration_rate() const { return eps_; }

private:
    double delta_;
    double eps_;
    std::vector<double> num_;
    std::vector<double> den_;
};

enum class HHMechanism {
    SimpleRandom,
    RandomGradient,
    Greedy,
    Permutation,
    GeneralizedRandomGradient,
    SigmaRandomGradient,
};

/// Low-level heuristic selection for single-point hyper-heuristics.
/// next() returns the operator index for the coming iteration, or
/// kAllOperators for the greedy mechanism, which evaluates the whole
/// portfolio in parallel.
class HHChooser {
public:
    static constexpr int kAllOperators = -1;

    /// tau_cap bounds the self-adjusted phase length (n^2 in the runners);
    /// pass 0 for no cap.
    HHChooser(HHMechanism mechanism, int portfolio_size, double tau, int sigma, bool adjust_tau,
              double tau_cap, RandomSource& rng);

    int next(RandomSource& rng);
    /// Reports the outcome of the iteration that used the returned operator.
    void report(IterationOutcome outcome);

    double tau() const { return tau_; }
    HHMechanism mechanism() const { return mechanism_; }

private:
    int random_operator(RandomSource& rng);

    HHMechanism mechanism_;
    int k_;
    double tau_;
    int sigma_;
    bool adjust_tau_;
    double tau_cap_;

    int current_ = 0;
    bool have_current_ = false;
    bool last_improved_ = false;
    std::uint64_t phase_iterations_ = 0;
    int phase_improvements_ = 0;
    std::vector<int> order_; // permutation mechanism
    std::size_t order_pos_ = 0;
};

/// Phase-length adaptation for the sigma-success random gradient: double tau
/// after a failed phase, halve (never below sigma) after a successful one,
/// capped at tau_cap.
double sigma_grg_tau_update(double tau, bool phase_succeeded, int sigma, double tau_cap);

enum class MigrationScheme { DoubleOrOne, DoubleOrHalve };

/// Migration interval update for the island model: double on a stagnant
/// interval; on improvement or arrival of a superior migrant reset to one
/// ((2tau,1)) or halve ((2tau,tau/2)).
std::uint64_t migration_interval_update(std::uint64_t tau, bool improved_or_received,
                                        MigrationScheme scheme);

} // namespace paramctl
