#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "paramctl/problems.hpp"

namespace paramctl {

/// Expected optimization time of the (1+1) EA with static mutation rate p on
/// LeadingOnes: (1/(2p^2)) [(1-p)^(1-n) - (1-p)].
double lo_expected_time(int n, double p);

/// Expected positive OneMax gain of flipping exactly ell distinct bits at
/// fitness f: sum_{i=ceil(ell/2)}^{ell} C(n-f,i) C(f,ell-i) (2i-ell) / C(n,ell).
double onemax_drift(int n, int f, int ell);

/// Strength maximizing onemax_drift at fitness f (ties break to the smallest
/// strength). Exact: the search is pruned only with a rigorous tail bound.
int drift_max_strength(int n, int f);

/// Shared memoized drift-maximizing strength table for one dimension; safe
/// to query from concurrent trials.
class DriftMaxTable {
public:
    explicit DriftMaxTable(int n);
    int strength_for(int fitness);
    int dimension() const { return n_; }

private:
    int n_;
    std::mutex mutex_;
    std::vector<int> cache_; // 0 = not yet computed
};

/// Fixed-target Markov chain analysis of RLS variants on LeadingOnes under
/// the uniform-suffix invariant. For each strength k the expected first time
/// a fitness of at least phi is reached equals sum_{i<phi} v_i / q_{i,k}
/// where v_i is the probability of ever visiting level i (strength
/// independent) and q_{i,k} = C(n-i-1, k-1)/C(n,k) the improvement
/// probability. Entries are +infinity where a strength cannot improve.
struct LoFixedTargetResult {
    std::vector<int> strengths;
    std::vector<double> visit_probability;          // v_i, i in [0, n)
    std::vector<std::vector<double>> target_time;   // [strength][phi], phi in [0, n]
    std::vector<double> best_target_time;           // best-of-set curve
    std::vector<int> best_strength;                 // argmax_k q_{i,k} per level i
};

LoFixedTargetResult lo_fixed_target_dp(int n, std::vector<int> strengths);

/// Improvement probability p_d = p d/n + (1-p) d(d-1)/(n(n-1)) of the
/// 1-or-2-bit mixing (1+1) EA on OneMax at distance d.
double mixed_pd(int n, int d, double p);

/// Drift h_d = p d/n + 2(1-p) d(d-1)/(n(n-1)) of the same algorithm.
double mixed_hd(int n, int d, double p);

struct MixedBounds {
    double upper; // fitness levels:  sum_{d=1}^{n} 1/p_d
    double lower; // variable drift:  sum_{d=3}^{n} 1/h_d
};

MixedBounds mixed_bounds(int n, double p);

/// Exact minimum spanning tree weight (Kruskal). Throws on disconnected
/// graphs.
long long kruskal_reference(const GraphInstance& g);

/// Flip-pattern distribution of a (1+1)-type algorithm, used to assemble
/// exact transition kernels for small state spaces.
struct MutationKernel {
    struct Component {
        enum class Kind { StandardBitMutation, ExactK, TwoBitWithReplacement };
        Kind kind;
        double weight;    // mixing weight; weights must sum to 1
        double rate = 0;  // StandardBitMutation
        int k = 0;        // ExactK
    };
    std::vector<Component> components;

    static MutationKernel standard_bit_mutation(double p);
    static MutationKernel exact_k(int k);
    /// 1-bit flips with probability p, 2-bit (distinct) flips otherwise.
    static MutationKernel one_two_mixing(double p);
};

struct HittingTimeResult {
    bool absorbing = true;       // false if some state cannot reach an optimum
    double expected_time = 0.0;  // mean over uniform initialization
};

/// Solves (I - Q) t = 1 over the non-optimal states of the exact Markov
/// chain of an elitist (1+1)-type algorithm with the given mutation kernel;
/// requires dimension <= 20 (practically <= 12). States from which no
/// optimum is reachable are reported as non-absorbing instead of a number.
HittingTimeResult brute_force_hitting_time(const BitProblem& problem,
                                           const MutationKernel& kernel);

/// Generic fitness-level upper bound: sum of reciprocal success
/// probabilities (infinite if any probability is zero).
double fitness_level_bound(std::span<const double> level_probabilities);

/// Parallel-time fitness-level sum 2 sum_{i=1}^{n-1} ln(2en/(n-i)) for the
/// (1+{2lambda,1}) EA on OneMax.
double doubling_parallel_bound_onemax(int n);

} // namespace paramctl
