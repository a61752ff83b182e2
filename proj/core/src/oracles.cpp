#include "paramctl/oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace paramctl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log k! with a grow-on-demand cumulative table; summation keeps relative
// error near machine precision for the n <= 1e4 range used here.
class LogFactorial {
public:
    double operator()(int k) {
        if (k < 0) throw std::invalid_argument("log factorial of negative value");
        while (static_cast<int>(table_.size()) <= k) {
            const auto next = static_cast<double>(table_.size());
            table_.push_back(table_.back() + std::log(next));
        }
        return table_[static_cast<std::size_t>(k)];
    }

private:
    std::vector<double> table_{0.0}; // log 0! = 0
};

thread_local LogFactorial log_fact;

double log_binomial(int a, int b) {
    if (b < 0 || b > a) return -kInf;
    return log_fact(a) - log_fact(b) - log_fact(a - b);
}

double binomial_coeff(int a, int b) {
    if (b < 0 || b > a) return 0.0;
    return std::exp(log_binomial(a, b));
}

} // namespace

double lo_expected_time(int n, double p) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("lo_expected_time: p must be in (0,1)");
    const double q = 1.0 - p;
    return (std::pow(q, 1 - n) - q) / (2.0 * p * p);
}

double onemax_drift(int n, int f, int ell) {
    if (f < 0 || f > n) throw std::invalid_argument("onemax_drift: fitness out of range");
    if (ell < 1 || ell > n) throw std::invalid_argument("onemax_drift: strength out of range");
    const int wrong = n - f;
    const int i_lo = std::max((ell + 1) / 2, ell - f);
    const int i_hi = std::min(ell, wrong);
    if (i_lo > i_hi) return 0.0;
    // Hypergeometric terms by ratio recurrence from the first one.
    double term = std::exp(log_binomial(wrong, i_lo) + log_binomial(f, ell - i_lo) -
                           log_binomial(n, ell));
    double drift = 0.0;
    for (int i = i_lo;; ++i) {
        drift += term * static_cast<double>(2 * i - ell);
        if (i == i_hi) break;
        term *= static_cast<double>((wrong - i) * (ell - i)) /
                static_cast<double>((i + 1) * (f - ell + i + 1));
    }
    return drift;
}

int drift_max_strength(int n, int f) {
    if (f < 0 || f >= n) throw std::invalid_argument("drift_max_strength: requires 0 <= f < n");
    const double wrong_fraction = static_cast<double>(n - f) / static_cast<double>(n);
    const double margin = 0.5 - wrong_fraction; // > 0 once past half the bits
    int best_ell = 1;
    double best = -1.0;
    for (int ell = 1; ell <= n; ++ell) {
        const double d = onemax_drift(n, f, ell);
        if (d > best) {
            best = d;
            best_ell = ell;
        }
        if (margin > 0.0) {
            // Hoeffding tail for the hypergeometric count of flipped wrong
            // bits: drift(m) <= m exp(-2 m margin^2) for every m; the bound
            // is decreasing once m >= 1/(2 margin^2), so the scan can stop
            // as soon as it falls below the incumbent.
            const double m = static_cast<double>(ell);
            if (m >= 1.0 / (2.0 * margin * margin) &&
                m * std::exp(-2.0 * m * margin * margin) < best) {
                break;
            }
        }
    }
    return best_ell;
}

DriftMaxTable::DriftMaxTable(int n) : n_(n), cache_(static_cast<std::size_t>(n), 0) {
    if (n < 1) throw std::invalid_argument("drift table: n must be >= 1");
}

int DriftMaxTable::strength_for(int fitness) {
    if (fitness < 0 || fitness >= n_)
        throw std::invalid_argument("drift table: fitness out of range");
    {
        std::lock_guard<std::mutex> lock(mutex_);
        const int cached = cache_[static_cast<std::size_t>(fitness)];
        if (cached != 0) return cached;
    }
    const int value = drift_max_strength(n_, fitness);
    std::lock_guard<std::mutex> lock(mutex_);
    cache_[static_cast<std::size_t>(fitness)] = value;
    return value;
}

LoFixedTargetResult lo_fixed_target_dp(int n, std::vector<int> strengths) {
    if (n < 1) throw std::invalid_argument("lo dp: n must be >= 1");
    if (strengths.empty()) throw std::invalid_argument("lo dp: empty strength set");
    for (int k : strengths)
        if (k < 1 || k > n) throw std::invalid_argument("lo dp: strength out of range");

    std::sort(strengths.begin(), strengths.end());
    strengths.erase(std::unique(strengths.begin(), strengths.end()), strengths.end());

    LoFixedTargetResult res;
    res.strengths = strengths;

    // Visit probabilities: level i is entered either by initialization or by
    // an improvement jump from below; conditional on improving from level j
    // the new level is j+1+G with G geometric(1/2) truncated at n (the
    // uniform-suffix invariant).
    res.visit_probability.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<double> pow_half(static_cast<std::size_t>(n + 2));
    for (int i = 0; i <= n + 1; ++i) pow_half[static_cast<std::size_t>(i)] = std::ldexp(1.0, -i);
    for (int i = 0; i < n; ++i) {
        double v = pow_half[static_cast<std::size_t>(i + 1)]; // P(initial level = i)
        for (int j = 0; j < i; ++j) {
            // P(jump from j lands exactly at i) = 2^-(i-j) for i < n
            v += res.visit_probability[static_cast<std::size_t>(j)] *
                 pow_half[static_cast<std::size_t>(i - j)];
        }
        res.visit_probability[static_cast<std::size_t>(i)] = v;
    }

    // Improvement probabilities q_{i,k} = C(n-i-1, k-1) / C(n, k).
    const auto improvement_prob = [&](int level, int k) {
        return std::exp(log_binomial(n - level - 1, k - 1) - log_binomial(n, k));
    };

    res.target_time.assign(strengths.size(), std::vector<double>(static_cast<std::size_t>(n + 1), 0.0));
    for (std::size_t s = 0; s < strengths.size(); ++s) {
        const int k = strengths[s];
        double acc = 0.0;
        for (int phi = 1; phi <= n; ++phi) {
            const int level = phi - 1;
            const double q = improvement_prob(level, k);
            if (q <= 0.0) {
                acc = kInf;
            } else if (acc != kInf) {
                acc += res.visit_probability[static_cast<std::size_t>(level)] / q;
            }
            res.target_time[s][static_cast<std::size_t>(phi)] = acc;
        }
    }

    // Since visits and jumps do not depend on the strength, the best-of-set
    // policy minimizes the waiting time level by level.
    res.best_strength.assign(static_cast<std::size_t>(n), strengths.front());
    res.best_target_time.assign(static_cast<std::size_t>(n + 1), 0.0);
    double acc = 0.0;
    for (int level = 0; level < n; ++level) {
        double best_q = -1.0;
        int best_k = strengths.front();
        for (int k : strengths) { // ascending, so ties keep the smallest k
            const double q = improvement_prob(level, k);
            if (q > best_q) {
                best_q = q;
                best_k = k;
            }
        }
        res.best_strength[static_cast<std::size_t>(level)] = best_k;
        if (best_q <= 0.0)
            acc = kInf;
        else if (acc != kInf)
            acc += res.visit_probability[static_cast<std::size_t>(level)] / best_q;
        res.best_target_time[static_cast<std::size_t>(level + 1)] = acc;
    }
    return res;
}

double mixed_pd(int n, int d, double p) {
    if (d < 1 || d > n) throw std::invalid_argument("mixed_pd: distance out of range");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("mixed_pd: p must be in [0,1]");
    const double dn = static_cast<double>(d) / n;
    const double pairs = static_cast<double>(d) * (d - 1) /
                         (static_cast<double>(n) * (n - 1));
    return p * dn + (1.0 - p) * pairs;
}

double mixed_hd(int n, int d, double p) {
    if (d < 1 || d > n) throw std::invalid_argument("mixed_hd: distance out of range");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("mixed_hd: p must be in [0,1]");
    const double dn = static_cast<double>(d) / n;
    const double pairs = static_cast<double>(d) * (d - 1) /
                         (static_cast<double>(n) * (n - 1));
    return p * dn + 2.0 * (1.0 - p) * pairs;
}

MixedBounds mixed_bounds(int n, double p) {
    MixedBounds b{0.0, 0.0};
    for (int d = 1; d <= n; ++d) {
        const double pd = mixed_pd(n, d, p);
        b.upper += pd > 0.0 ? 1.0 / pd : kInf;
    }
    for (int d = 3; d <= n; ++d) {
        const double hd = mixed_hd(n, d, p);
        b.lower += hd > 0.0 ? 1.0 / hd : kInf;
    }
    return b;
}

long long kruskal_reference(const GraphInstance& g) {
    if (!g.connected()) throw std::invalid_argument("kruskal: graph must be connected");
    std::vector<int> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return g.edges[static_cast<std::size_t>(a)].weight <
               g.edges[static_cast<std::size_t>(b)].weight;
    });
    std::vector<int> parent(static_cast<std::size_t>(g.vertex_count));
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    long long total = 0;
    for (int idx : order) {
        const auto& e = g.edges[static_cast<std::size_t>(idx)];
        const int ru = find(e.u), rv = find(e.v);
        if (ru != rv) {
            parent[static_cast<std::size_t>(ru)] = rv;
            total += e.weight;
        }
    }
    return total;
}

MutationKernel MutationKernel::standard_bit_mutation(double p) {
    MutationKernel k;
    k.components.push_back({Component::Kind::StandardBitMutation, 1.0, p, 0});
    return k;
}

MutationKernel MutationKernel::exact_k(int flips) {
    MutationKernel k;
    k.components.push_back({Component::Kind::ExactK, 1.0, 0.0, flips});
    return k;
}

MutationKernel MutationKernel::one_two_mixing(double p) {
    MutationKernel k;
    if (p > 0.0) k.components.push_back({Component::Kind::ExactK, p, 0.0, 1});
    if (p < 1.0) k.components.push_back({Component::Kind::ExactK, 1.0 - p, 0.0, 2});
    return k;
}

HittingTimeResult brute_force_hitting_time(const BitProblem& problem,
                                           const MutationKernel& kernel) {
    const int n = problem.dimension();
    if (n > 20) throw std::invalid_argument("brute force oracle: dimension too large");
    double weight_sum = 0.0;
    for (const auto& c : kernel.components) weight_sum += c.weight;
    if (std::abs(weight_sum - 1.0) > 1e-12)
        throw std::invalid_argument("brute force oracle: kernel weights must sum to 1");

    const std::uint32_t states = 1u << n;
    std::vector<double> fitness(states);
    BitString x(static_cast<std::size_t>(n));
    for (std::uint32_t s = 0; s < states; ++s) {
        for (int b = 0; b < n; ++b) x[static_cast<std::size_t>(b)] = (s >> b) & 1u;
        fitness[s] = problem.evaluate(x);
    }

    // P(flip mask has popcount h): depends only on h for all kernel kinds.
    std::vector<double> mass_per_mask(static_cast<std::size_t>(n + 1), 0.0);
    double stay_extra = 0.0; // mass the with-replacement 2-bit puts on identity
    for (const auto& c : kernel.components) {
        switch (c.kind) {
        case MutationKernel::Component::Kind::StandardBitMutation:
            for (int h = 0; h <= n; ++h)
                mass_per_mask[static_cast<std::size_t>(h)] +=
                    c.weight * std::pow(c.rate, h) * std::pow(1.0 - c.rate, n - h);
            break;
        case MutationKernel::Component::Kind::ExactK:
            if (c.k < 0 || c.k > n) throw std::invalid_argument("brute force oracle: bad k");
            mass_per_mask[static_cast<std::size_t>(c.k)] += c.weight / binomial_coeff(n, c.k);
            break;
        case MutationKernel::Component::Kind::TwoBitWithReplacement:
            stay_extra += c.weight / n;
            if (n >= 2)
                mass_per_mask[2] += c.weight * (1.0 - 1.0 / n) / binomial_coeff(n, 2);
            break;
        }
    }

    // Transition matrix under elitist acceptance; rejected proposals stay.
    Eigen::MatrixXd trans = Eigen::MatrixXd::Zero(states, states);
    for (std::uint32_t s = 0; s < states; ++s) {
        double stay = stay_extra;
        for (std::uint32_t mask = 1; mask < states; ++mask) {
            const double w = mass_per_mask[static_cast<std::size_t>(__builtin_popcount(mask))];
            if (w == 0.0) continue;
            const std::uint32_t t = s ^ mask;
            if (problem.at_least_as_good(fitness[t], fitness[s]))
                trans(s, t) += w;
            else
                stay += w;
        }
        stay += mass_per_mask[0]; // empty flip set
        trans(s, s) += stay;
    }

    // Row-stochasticity sanity.
    for (std::uint32_t s = 0; s < states; ++s) {
        if (std::abs(trans.row(s).sum() - 1.0) > 1e-9)
            throw std::logic_error("brute force oracle: kernel is not row stochastic");
    }

    std::vector<std::uint32_t> optimal;
    for (std::uint32_t s = 0; s < states; ++s)
        if (problem.is_optimal(fitness[s])) optimal.push_back(s);
    if (optimal.empty()) return {false, 0.0};

    // Reverse reachability: can every state reach an optimum?
    std::vector<char> reaches(states, 0);
    std::vector<std::uint32_t> queue = optimal;
    for (auto s : queue) reaches[s] = 1;
    while (!queue.empty()) {
        const std::uint32_t t = queue.back();
        queue.pop_back();
        for (std::uint32_t s = 0; s < states; ++s) {
            if (!reaches[s] && trans(s, t) > 0.0) {
                reaches[s] = 1;
                queue.push_back(s);
            }
        }
    }
    for (std::uint32_t s = 0; s < states; ++s)
        if (!reaches[s]) return {false, 0.0};

    // Solve (I - Q) t = 1 over non-optimal states.
    std::vector<std::uint32_t> transient;
    std::vector<int> index(states, -1);
    for (std::uint32_t s = 0; s < states; ++s) {
        if (!problem.is_optimal(fitness[s])) {
            index[s] = static_cast<int>(transient.size());
            transient.push_back(s);
        }
    }
    const auto m = static_cast<Eigen::Index>(transient.size());
    if (m == 0) return {true, 0.0};
    Eigen::MatrixXd system = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const std::uint32_t s = transient[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < m; ++j) {
            const std::uint32_t t = transient[static_cast<std::size_t>(j)];
            system(i, j) = (i == j ? 1.0 : 0.0) - trans(s, t);
        }
    }
    const Eigen::VectorXd times = system.partialPivLu().solve(Eigen::VectorXd::Ones(m));
    double total = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) total += times(i);
    return {true, total / static_cast<double>(states)};
}

double fitness_level_bound(std::span<const double> level_probabilities) {
    double total = 0.0;
    for (double p : level_probabilities) {
        if (p < 0.0 || p > 1.0)
            throw std::invalid_argument("fitness_level_bound: probabilities must be in [0,1]");
        if (p == 0.0) return kInf;
        total += 1.0 / p;
    }
    return total;
}

double doubling_parallel_bound_onemax(int n) {
    double total = 0.0;
    for (int i = 1; i <= n - 1; ++i)
        total += std::log(2.0 * std::exp(1.0) * n / static_cast<double>(n - i));
    return 2.0 * total;
}

} // namespace paramctl
