#include "paramctl/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace paramctl {

double OneFifthRule::on_success() {
    value = std::max(value / update_strength, lo);
    return value;
}

double OneFifthRule::on_failure() {
    value = std::min(value * std::pow(update_strength, 1.0 / (success_rate - 1.0)), hi);
    return value;
}

double ga_lambda_update(OneFifthRule& state, IterationOutcome outcome) {
    // Alg. 4 semantics: only a strict improvement counts as success; equal
    // fitness replaces the parent but still grows lambda.
    return outcome == IterationOutcome::Improved ? state.on_success() : state.on_failure();
}

int round_lambda(double lambda) {
    return static_cast<int>(std::floor(lambda + 0.5));
}

int offspring_doubling_update(int lambda, int successes, DoublingScheme scheme) {
    if (lambda < 1) throw std::invalid_argument("offspring_doubling_update: lambda must be >= 1");
    if (successes < 0) throw std::invalid_argument("offspring_doubling_update: negative successes");
    if (successes == 0) return 2 * lambda;
    switch (scheme) {
    case DoublingScheme::DoubleOrReset:
        return 1;
    case DoublingScheme::DoubleOrHalve:
        return std::max(1, lambda / 2);
    default:
        return std::max(1, lambda / successes);
    }
}

double two_rate_update(TwoRateState& state, WinnerHalf winner, RandomSource& rng) {
    const double u = rng.next_real();
    double next;
    if (u < 0.25) {
        next = state.r / 2.0;
    } else if (u < 0.5) {
        next = 2.0 * state.r;
    } else {
        next = winner == WinnerHalf::Low ? state.r / 2.0 : 2.0 * state.r;
    }
    state.r = std::clamp(next, state.r_min, state.r_max);
    return state.r;
}

double rank_based_rate(int rank, int mu, double p_min, double p_max) {
    if (mu < 1) throw std::invalid_argument("rank_based_rate: mu must be >= 1");
    if (rank < 1 || rank > mu) throw std::invalid_argument("rank_based_rate: rank out of range");
    return p_min + (p_max - p_min) * static_cast<double>(rank - 1) / static_cast<double>(mu);
}

double time_dependent_rate(std::uint64_t t, int n) {
    if (t < 1) throw std::invalid_argument("time_dependent_rate: t must be >= 1");
    if (n < 1) throw std::invalid_argument("time_dependent_rate: n must be >= 1");
    const int cycle = std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))) - 1);
    const int exponent = static_cast<int>((t - 1) % static_cast<std::uint64_t>(cycle));
    return std::ldexp(1.0, exponent) / static_cast<double>(n);
}

double fitness_dependent_rate_lo(double fitness) {
    if (fitness < 0.0) throw std::invalid_argument("fitness_dependent_rate_lo: negative fitness");
    return 1.0 / (fitness + 1.0);
}

double fitness_dependent_rate_opl(double fitness, int lambda, int n) {
    if (fitness >= static_cast<double>(n))
        throw std::invalid_argument("fitness_dependent_rate_opl: requires f < n");
    const double ratio = std::exp(1.0) * n / (static_cast<double>(n) - fitness);
    return std::max(1.0 / n, std::log(static_cast<double>(lambda)) / (n * std::log(ratio)));
}

int fitness_dependent_lambda_ga(double fitness, int n) {
    if (fitness >= static_cast<double>(n))
        throw std::invalid_argument("fitness_dependent_lambda_ga: requires f < n");
    const double lambda = std::sqrt(static_cast<double>(n) / (static_cast<double>(n) - fitness));
    return std::min(n, static_cast<int>(std::ceil(lambda)));
}

double self_adaptive_child_rate(double r, double factor, double lo, double hi, RandomSource& rng) {
    const double next = rng.next_bool() ? r * factor : r / factor;
    return std::clamp(next, lo, hi);
}

// -------------------------------------------------- probability matching

ProbabilityMatching::ProbabilityMatching(int k, double p_min, double alpha)
    : p_min_(p_min), alpha_(alpha), conf_(static_cast<std::size_t>(k), 1.0),
      prob_(static_cast<std::size_t>(k), 0.0) {
    if (k < 1) throw std::invalid_argument("probability matching: empty portfolio");
    if (p_min < 0.0 || p_min * k > 1.0)
        throw std::invalid_argument("probability matching: need 0 <= k*p_min <= 1");
    recompute();
}

void ProbabilityMatching::recompute() {
    double total = 0.0;
    for (double c : conf_) total += c;
    const double k = static_cast<double>(conf_.size());
    for (std::size_t i = 0; i < conf_.size(); ++i) {
        const double share = total > 0.0 ? conf_[i] / total : 1.0 / k;
        prob_[i] = p_min_ + (1.0 - k * p_min_) * share;
    }
}

int ProbabilityMatching::select(RandomSource& rng) const {
    double u = rng.next_real();
    for (std::size_t i = 0; i + 1 < prob_.size(); ++i) {
        if (u < prob_[i]) return static_cast<int>(i);
        u -= prob_[i];
    }
    return static_cast<int>(prob_.size()) - 1;
}

void ProbabilityMatching::update(int chosen, double reward) {
    auto& c = conf_[static_cast<std::size_t>(chosen)];
    c = (1.0 - alpha_) * c + alpha_ * reward;
    recompute();
}

// ------------------------------------------------------ adaptive pursuit

AdaptivePursuit::AdaptivePursuit(int k, double p_min, double p_max, double alpha, double beta)
    : p_min_(p_min), p_max_(p_max), alpha_(alpha), beta_(beta),
      conf_(static_cast<std::size_t>(k), 1.0),
      prob_(static_cast<std::size_t>(k), 1.0 / static_cast<double>(k)) {
    if (k < 1) throw std::invalid_argument("adaptive pursuit: empty portfolio");
    if (p_min < 0.0 || p_max < p_min) throw std::invalid_argument("adaptive pursuit: bad p bounds");
}

int AdaptivePursuit::select(RandomSource& rng) const {
    double u = rng.next_real();
    for (std::size_t i = 0; i + 1 < prob_.size(); ++i) {
        if (u < prob_[i]) return static_cast<int>(i);
        u -= prob_[i];
    }
    return static_cast<int>(prob_.size()) - 1;
}

void AdaptivePursuit::update(int chosen, double reward) {
    auto& c = conf_[static_cast<std::size_t>(chosen)];
    c = (1.0 - alpha_) * c + alpha_ * reward;
    std::size_t winner = 0;
    for (std::size_t i = 1; i < conf_.size(); ++i)
        if (conf_[i] > conf_[winner]) winner = i; // ties keep the lowest index
    for (std::size_t i = 0; i < prob_.size(); ++i) {
        const double target = i == winner ? p_max_ : p_min_;
        prob_[i] = (1.0 - beta_) * prob_[i] + beta_ * target;
    }
}

// ------------------------------------------------------------------- UCB

UcbSelector::UcbSelector(int k, double c, int window)
    : c_(c), window_(static_cast<std::size_t>(window)), counts_(static_cast<std::size_t>(k), 0),
      sums_(static_cast<std::size_t>(k), 0.0) {
    if (k < 1) throw std::invalid_argument("ucb: empty portfolio");
    if (window < 1) throw std::invalid_argument("ucb: window must be >= 1");
}

double UcbSelector::estimated_reward(int arm) const {
    const auto i = static_cast<std::size_t>(arm);
    return counts_[i] == 0 ? 0.0 : sums_[i] / static_cast<double>(counts_[i]);
}

int UcbSelector::select() const {
    for (std::size_t i = 0; i < counts_.size(); ++i)
        if (counts_[i] == 0) return static_cast<int>(i); // forced round robin
    std::uint64_t total = 0;
    for (auto c : counts_) total += c;
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        const double bonus = std::sqrt(
            c_ * std::log(2.0 * static_cast<double>(total) / static_cast<double>(counts_[i])));
        const double score = estimated_reward(static_cast<int>(i)) + bonus;
        if (score > best_score) {
            best_score = score;
            best = static_cast<int>(i);
        }
    }
    return best;
}

void UcbSelector::update(int chosen, double reward) {
    history_.emplace_back(chosen, reward);
    counts_[static_cast<std::size_t>(chosen)] += 1;
    sums_[static_cast<std::size_t>(chosen)] += reward;
    if (history_.size() > window_) {
        const auto [arm, r] = history_.front();
        history_.pop_front();
        counts_[static_cast<std::size_t>(arm)] -= 1;
        sums_[static_cast<std::size_t>(arm)] -= r;
    }
}

// -------------------------------------------------------- velocity table

VelocityTable::VelocityTable(int k, double forgetting_rate, double exploration_rate)
    : delta_(forgetting_rate), eps_(exploration_rate), num_(static_cast<std::size_t>(k), 0.0),
      den_(static_cast<std::size_t>(k), 0.0) {
    if (k < 1) throw std::invalid_argument("velocity table: empty portfolio");
    if (forgetting_rate < 0.0 || forgetting_rate > 1.0)
        throw std::invalid_argument("velocity table: forgetting rate in [0,1]");
}

void VelocityTable::observe(int strength, double progress) {
    if (strength < 1 || strength > portfolio_size())
        throw std::invalid_argument("velocity table: strength out of range");
    const double keep = 1.0 - delta_;
    for (std::size_t i = 0; i < num_.size(); ++i) {
        num_[i] *= keep;
        den_[i] *= keep;
    }
    const auto idx = static_cast<std::size_t>(strength - 1);
    num_[idx] += progress;
    den_[idx] += 1.0;
}

double VelocityTable::velocity(int strength) const {
    const auto idx = static_cast<std::size_t>(strength - 1);
    if (den_[idx] == 0.0) return std::numeric_limits<double>::infinity();
    return num_[idx] / den_[idx];
}

int VelocityTable::select(RandomSource& rng) const {
    if (rng.bernoulli(eps_)) return 1 + static_cast<int>(rng.next_below(num_.size()));
    int best = 1;
    double best_v = velocity(1);
    for (int r = 2; r <= portfolio_size(); ++r) {
        const double v = velocity(r);
        if (v > best_v) {
            best_v = v;
            best = r;
        }
    }
    return best;
}

// -------------------------------------------------------------- HHChooser

HHChooser::HHChooser(HHMechanism mechanism, int portfolio_size, double tau, int sigma,
                     bool adjust_tau, double tau_cap, RandomSource& rng)
    : mechanism_(mechanism), k_(portfolio_size), tau_(tau), sigma_(sigma), adjust_tau_(adjust_tau),
      tau_cap_(tau_cap) {
    if (portfolio_size < 1) throw std::invalid_argument("hh: empty portfolio");
    if (sigma_ < 1) throw std::invalid_argument("hh: sigma must be >= 1");
    if (mechanism_ == HHMechanism::Permutation) {
        order_ = rng.permutation(k_);
    }
}

int HHChooser::random_operator(RandomSource& rng) {
    return static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k_)));
}

int HHChooser::next(RandomSource& rng) {
    switch (mechanism_) {
    case HHMechanism::SimpleRandom:
        current_ = random_operator(rng);
        return current_;
    case HHMechanism::Greedy:
        return kAllOperators;
    case HHMechanism::Permutation: {
        current_ = order_[order_pos_];
        order_pos_ = (order_pos_ + 1) % order_.size();
        return current_;
    }
    case HHMechanism::RandomGradient:
        if (!have_current_ || !last_improved_) current_ = random_operator(rng);
        have_current_ = true;
        return current_;
    case HHMechanism::GeneralizedRandomGradient:
    case HHMechanism::SigmaRandomGradient: {
        if (!have_current_) {
            current_ = random_operator(rng);
            have_current_ = true;
            phase_iterations_ = 0;
            phase_improvements_ = 0;
        }
        return current_;
    }
    }
    return current_;
}

void HHChooser::report(IterationOutcome outcome) {
    const bool improved = outcome == IterationOutcome::Improved;
    last_improved_ = improved;
    if (mechanism_ == HHMechanism::GeneralizedRandomGradient) {
        ++phase_iterations_;
        if (improved) {
            // a new phase starts immediately with the same operator
            phase_iterations_ = 0;
        } else if (phase_iterations_ >= static_cast<std::uint64_t>(tau_)) {
            have_current_ = false; // next() draws a fresh random operator
        }
        return;
    }
    if (mechanism_ == HHMechanism::SigmaRandomGradient) {
        ++phase_iterations_;
        if (improved) ++phase_improvements_;
        if (phase_improvements_ >= sigma_) {
            // successful phase: same operator, fresh phase
            if (adjust_tau_) tau_ = sigma_grg_tau_update(tau_, true, sigma_, tau_cap_);
            phase_iterations_ = 0;
            phase_improvements_ = 0;
        } else if (phase_iterations_ >= static_cast<std::uint64_t>(tau_)) {
            if (adjust_tau_) tau_ = sigma_grg_tau_update(tau_, false, sigma_, tau_cap_);
            have_current_ = false;
        }
    }
}

double sigma_grg_tau_update(double tau, bool phase_succeeded, int sigma, double tau_cap) {
    if (tau < static_cast<double>(sigma))
        throw std::invalid_argument("sigma_grg_tau_update: tau must be >= sigma");
    double next = phase_succeeded ? std::max(static_cast<double>(sigma), tau / 2.0) : 2.0 * tau;
    if (tau_cap > 0.0) next = std::min(next, tau_cap);
    return next;
}

std::uint64_t migration_interval_update(std::uint64_t tau, bool improved_or_received,
                                        MigrationScheme scheme) {
    if (tau < 1) throw std::invalid_argument("migration_interval_update: tau must be >= 1");
    if (!improved_or_received) return 2 * tau;
    if (scheme == MigrationScheme::DoubleOrOne) return 1;
    return std::max<std::uint64_t>(1, tau / 2);
}

} // namespace paramctl
