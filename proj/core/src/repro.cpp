#include "paramctl/repro.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "paramctl/algorithms.hpp"
#include "paramctl/harness.hpp"
#include "paramctl/oracles.hpp"

namespace paramctl::repro {

namespace {

std::uint64_t base_seed(std::uint64_t fallback) {
    if (const char* env = std::getenv("PARAMCTL_SEED")) {
        std::uint64_t v = 0;
        const char* end = env + std::char_traits<char>::length(env);
        const auto [p, err] = std::from_chars(env, end, v);
        if (err == std::errc() && p == end) return v;
    }
    return fallback;
}

int worker_count(int workers) {
    return workers > 0 ? workers : std::max(1u, std::thread::hardware_concurrency());
}

/// Runs `runs` trials on a worker pool; trial i draws from stream_id = i of
/// the given master seed, so results do not depend on scheduling.
std::vector<RunOutcome> parallel_runs(int runs, int workers, std::uint64_t seed,
                                      const std::function<RunOutcome(RandomSource&)>& trial) {
    std::vector<RunOutcome> out(static_cast<std::size_t>(runs));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= runs) return;
            try {
                RandomSource rng(seed, static_cast<std::uint64_t>(i));
                out[static_cast<std::size_t>(i)] = trial(rng);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    const int count = std::min(worker_count(workers), runs);
    if (count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(count));
        for (int t = 0; t < count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

double mean_of(const std::vector<RunOutcome>& outcomes, OutcomeField field) {
    double sum = 0.0;
    for (const auto& o : outcomes) sum += outcome_field(o, field);
    return sum / static_cast<double>(outcomes.size());
}

bool all_succeeded(const std::vector<RunOutcome>& outcomes) {
    for (const auto& o : outcomes)
        if (!o.success) return false;
    return true;
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

struct Check {
    std::vector<std::string>& details;
    bool ok = true;

    void expect(bool condition, const std::string& line) {
        details.push_back(std::string(condition ? "ok: " : "FAILED: ") + line);
        ok &= condition;
    }
    void expect_rel(double value, double reference, double tol, const std::string& label) {
        const double err = std::abs(value - reference) / std::abs(reference);
        expect(err <= tol, label + ": " + fmt(value) + " vs " + fmt(reference) + " (rel err " +
                               fmt(err) + ", tol " + fmt(tol) + ")");
    }
    void expect_in(double value, double lo, double hi, const std::string& label) {
        expect(value >= lo && value <= hi,
               label + ": " + fmt(value) + " in [" + fmt(lo) + ", " + fmt(hi) + "]");
    }
};

// ------------------------------------------------------------ criterion 1

CriterionResult rls_lo_baseline(int workers) {
    CriterionResult res{"rls-lo-baseline"};
    Check check{res.details};
    const int n = 500;
    const auto outcomes = parallel_runs(200, workers, base_seed(1001), [&](RandomSource& rng) {
        LeadingOnesProblem problem(n);
        return run_rls(problem, RlsPolicy::fixed(1), 10'000'000, rng);
    });
    check.expect(all_succeeded(outcomes), "all 200 runs reached the optimum");
    check.expect_rel(mean_of(outcomes, OutcomeField::Evaluations), n * n / 2.0, 0.05,
                     "mean evaluations vs n^2/2");
    res.pass = check.ok;
    return res;
}

// ------------------------------------------------------------ criterion 2

CriterionResult lo_closed_form(int workers) {
    CriterionResult res{"lo-closed-form"};
    Check check{res.details};
    const int n = 100;
    const double rates[2] = {1.0 / n, 1.59 / n};
    double means[2];
    for (int i = 0; i < 2; ++i) {
        const double p = rates[i];
        const auto outcomes =
            parallel_runs(500, workers, base_seed(1002 + static_cast<std::uint64_t>(i)),
                          [&](RandomSource& rng) {
                              LeadingOnesProblem problem(n);
                              return run_one_plus_one(problem, OneOneRatePolicy::static_rate(p),
                                                      10'000'000, rng);
                          });
        means[i] = mean_of(outcomes, OutcomeField::Evaluations);
        check.expect_rel(means[i], lo_expected_time(n, p), 0.05,
                         "mean evaluations at p=" + fmt(p) + " vs closed form");
    }
    check.expect_in(means[1] / means[0], 0.85, 0.93, "ratio best-static/standard");
    res.pass = check.ok;
    return res;
}

// ------------------------------------------------------------ criterion 3

CriterionResult lo_fitness_dependent(int workers) {
    CriterionResult res{"lo-fitness-dependent"};
    Check check{res.details};
    const int n = 500;
    const auto outcomes = parallel_runs(300, workers, base_seed(1003), [&](RandomSource& rng) {
        LeadingOnesProblem problem(n);
        return run_one_plus_one(problem, OneOneRatePolicy::fitness_lo(), 10'000'000, rng);
    });
    check.expect(all_succeeded(outcomes), "all 300 runs reached the optimum");
    check.expect_in(mean_of(outcomes, OutcomeField::Evaluations) / (static_cast<double>(n) * n),
                    0.63, 0.73, "mean/n^2");
    res.pass = check.ok;
    return res;
}

// ------------------------------------------------------------ criterion 4

CriterionResult fig1_adaptive_rls(int workers) {
    CriterionResult res{"fig1-adaptive-rls"};
    Check check{res.details};
    const int n = 1000;
    const std::uint64_t budget = 5'000'000;

    const auto run_variant = [&](const RlsPolicy& policy, std::uint64_t seed,
                                 std::optional<double> stop_at, int runs) {
        return parallel_runs(runs, workers, seed, [&, stop_at](RandomSource& rng) {
            LeadingOnesProblem problem(n);
            RunOptions opts;
            opts.stop_at = stop_at;
            return run_rls(problem, policy, budget, rng, opts);
        });
    };

    const auto adaptive = run_variant(RlsPolicy::best_of_set({1, 2, 3}), base_seed(1004), {}, 200);
    const auto one_bit = run_variant(RlsPolicy::fixed(1), base_seed(1104), {}, 200);
    check.expect(all_succeeded(adaptive) && all_succeeded(one_bit), "all full runs succeeded");
    const double ratio = mean_of(adaptive, OutcomeField::Evaluations) /
                         mean_of(one_bit, OutcomeField::Evaluations);
    check.expect_in(ratio, 0.75, 0.85, "adaptive/1-bit mean ratio");

    // Fixed-target curve ordering, checked end to end through the CSV files.
    const double high_target = 850;
    const auto two_bit = run_variant(RlsPolicy::fixed(2), base_seed(1204), high_target, 100);
    const auto three_bit = run_variant(RlsPolicy::fixed(3), base_seed(1304), high_target, 100);

    const auto out_dir = std::filesystem::temp_directory_path() / "paramctl-fig1";
    const auto mean_first_hit_from_csv = [&](const std::vector<RunOutcome>& outcomes,
                                             const std::string& tag, double target) {
        CsvContext ctx{"leadingones", "rls-" + tag, n, std::nullopt, Direction::Maximize, "k"};
        emit_csv_files(out_dir / tag, outcomes, ctx);
        std::ifstream in(out_dir / tag / "fixed_target.csv");
        std::string line;
        std::getline(in, line); // header
        std::map<int, std::uint64_t> first_hit;
        while (std::getline(in, line)) {
            const auto c1 = line.find(',');
            const auto c2 = line.find(',', c1 + 1);
            const int run_id = std::stoi(line.substr(0, c1));
            const double fitness = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
            const std::uint64_t evals = std::stoull(line.substr(c2 + 1));
            if (fitness >= target && !first_hit.count(run_id)) first_hit[run_id] = evals;
        }
        double total = 0.0;
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            const auto it = first_hit.find(static_cast<int>(i));
            total += it != first_hit.end() ? static_cast<double>(it->second)
                                           : static_cast<double>(budget);
        }
        return total / static_cast<double>(outcomes.size());
    };

    const double low_target = 400;
    const double t1_low = mean_first_hit_from_csv(one_bit, "k1", low_target);
    const double t2_low = mean_first_hit_from_csv(two_bit, "k2", low_target);
    const double t3_low = mean_first_hit_from_csv(three_bit, "k3", low_target);
    check.expect(t3_low < t2_low && t2_low < t1_low,
                 "below n/2 (target 400): 3-bit (" + fmt(t3_low) + ") < 2-bit (" + fmt(t2_low) +
                     ") < 1-bit (" + fmt(t1_low) + ")");
    const double t1_high = mean_first_hit_from_csv(one_bit, "k1", high_target);
    const double t2_high = mean_first_hit_from_csv(two_bit, "k2", high_target);
    const double t3_high = mean_first_hit_from_csv(three_bit, "k3", high_target);
    check.expect(t1_high < t2_high && t1_high < t3_high,
                 "above n/2 (target 850): 1-bit (" + fmt(t1_high) + ") fastest (2-bit " +
                     fmt(t2_high) + ", 3-bit " + fmt(t3_high) + ")");
    res.pass = check.ok;
    return res;
}

// ------------------------------------------------------------ criterion 5

CriterionResult hh_constants(int workers) {
    CriterionResult res{"hh-constants"};
    Check check{res.details};
    const int n = 1000;
    const double n2 = static_cast<double>(n) * n;

    const auto run_mechanism = [&](HHMechanism mechanism, double tau, std::uint64_t seed) {
        HHConfig config;
        config.mechanism = mechanism;
        config.strengths = {1, 2};
        config.two_bit_with_replacement = true;
        config.tau = tau;
        return parallel_runs(200, workers, seed, [&](RandomSource& rng) {
            LeadingOnesProblem problem(n);
            return run_single_point_hh(problem, config, 3'000'000, rng);
        });
    };

    struct Classic {
        const char* name;
        HHMechanism mechanism;
    };
    const Classic classics[] = {{"simple-random", HHMechanism::SimpleRandom},
                                {"random-gradient", HHMechanism::RandomGradient},
                                {"greedy", HHMechanism::Greedy},
                                {"permutation", HHMechanism::Permutation}};
    double classic_means[4];
    std::uint64_t seed = base_seed(1005);
    for (int i = 0; i < 4; ++i) {
        const auto outcomes = run_mechanism(classics[i].mechanism, 0.0, seed + 100u * (i + 1));
        check.expect(all_succeeded(outcomes), std::string(classics[i].name) + ": all runs succeeded");
        classic_means[i] = mean_of(outcomes, OutcomeField::Generations);
        check.expect_in(classic_means[i] / n2, 0.52, 0.58,
                        std::string(classics[i].name) + " mean iterations / n^2");
    }
    const auto grg =
        run_mechanism(HHMechanism::GeneralizedRandomGradient, 10.0 * n, seed + 900u);
    check.expect(all_succeeded(grg), "grg: all runs succeeded");
    const double grg_mean = mean_of(grg, OutcomeField::Generations);
    check.expect_in(grg_mean / n2, 0.41, 0.47, "grg (tau=10n) mean iterations / n^2");
    for (int i = 0; i < 4; ++i)
        check.expect(grg_mean < classic_means[i],
                     std::string("grg mean below ") + classics[i].name + " (" + fmt(grg_mean) +
                         " < " + fmt(classic_means[i]) + ")");
    res.pass = check.ok;
    return res;
}

// ------------------------------------------------------------ criterion 6

CriterionResult drift_max_om(int workers) {
    CriterionResult res{"drift-max-om"};
    Check check{res.details};
    const int n = 10'000;
    auto table = std::make_shared<DriftMaxTable>(n);

    const auto adaptive = parallel_runs(100, workers, base_seed(1006), [&](RandomSource& rng) {
        OneMaxProblem problem(n);
        return run_rls(problem, RlsPolicy::drift_maximizing(table), 3'000'000, rng);
    });
    const auto one_bit = parallel_runs(100, workers, base_seed(1106), [&](RandomSource& rng) {
        OneMaxProblem problem(n);
        return run_rls(problem, RlsPolicy::fixed(1), 3'000'000, rng);
    });
    check.expect(all_succeeded(adaptive) && all_succeeded(one_bit), "all runs succeeded");
    const double ratio = mean_of(adaptive, OutcomeField::Evaluations) /
                         mean_of(one_bit, OutcomeField::Evaluations);
    check.expect(ratio <= 0.995, "adaptive/1-bit mean ratio " + fmt(ratio) + " <= 0.995");

    const auto budget = static_cast<std::uint64_t>(std::llround(0.2675 * n * 4));
    double dist_adaptive = 0.0, dist_one_bit = 0.0;
    for (const auto& o : adaptive) dist_adaptive += n - o.fitness_at_budget(budget);
    for (const auto& o : one_bit) dist_one_bit += n - o.fitness_at_budget(budget);
    dist_adaptive /= static_cast<double>(adaptive.size());
    dist_one_bit /= static_cast<double>(one_bit.size());
    const double fixed_budget_ratio = dist_adaptive / dist_one_bit;
    check.expect(fixed_budget_ratio <= 0.93,
                 "fixed-budget distance ratio at budget " + std::to_string(budget) + ": " +
                     fmt(fixed_budget_ratio) + " <= 0.93");
    res.pass = check.ok;
    return res;
}

// ------------------------------------------------------------ criterion 7

CriterionResult ga_linear(int workers) {
    CriterionResult res{"ga-linear"};
    Check check{res.details};
    const int dims[3] = {500, 1000, 2000};

    const auto variant_spread = [&](const GaLambdaPolicy& policy, const std::string& label,
                                    std::uint64_t seed) {
        double lo = 0.0, hi = 0.0;
        for (int i = 0; i < 3; ++i) {
            const int n = dims[i];
            const auto outcomes =
                parallel_runs(100, workers, seed + 10u * static_cast<std::uint64_t>(i),
                              [&](RandomSource& rng) {
                                  OneMaxProblem problem(n);
                                  return run_ollga(problem, policy, 1'000'000, rng);
                              });
            check.expect(all_succeeded(outcomes), label + " n=" + std::to_string(n) + ": all runs succeeded");
            const double per_n = mean_of(outcomes, OutcomeField::Evaluations) / n;
            res.details.push_back("   " + label + " n=" + std::to_string(n) +
                                  ": mean evaluations / n = " + fmt(per_n));
            lo = i == 0 ? per_n : std::min(lo, per_n);
            hi = i == 0 ? per_n : std::max(hi, per_n);
        }
        check.expect(hi / lo - 1.0 < 0.15,
                     label + " spread of mean/n across n: " + fmt(hi / lo - 1.0) + " < 0.15");
    };

    variant_spread(GaLambdaPolicy::one_fifth(1.5, 1.0), "self-adjusting", base_seed(1007));
    variant_spread(GaLambdaPolicy::fitness_dependent(), "fitness-dependent", base_seed(1107));
    res.pass = check.ok;
    return res;
}

// ------------------------------------------------------------ criterion 8

CriterionResult two_rate_caps(int workers) {
    CriterionResult res{"two-rate-caps"};
    Check check{res.details};
    const int n = 5000;
    const int lambda = 64;

    const auto two_rate = parallel_runs(50, workers, base_seed(1008), [&](RandomSource& rng) {
        OneMaxProblem problem(n);
        RunOptions opts;
        opts.param_stride = 1;
        return run_one_plus_lambda(problem, lambda, OplRatePolicy::two_rate(2.0),
                                   OplLambdaPolicy::fixed(), 10'000'000, rng, opts);
    });
    check.expect(all_succeeded(two_rate), "2-rate: all runs succeeded");
    bool in_caps = true;
    double r_lo = 1e300, r_hi = 0.0;
    for (const auto& o : two_rate) {
        for (const auto& [gen, r] : o.parameter_trace) {
            in_caps &= r >= 2.0 && r <= n / 4.0;
            r_lo = std::min(r_lo, r);
            r_hi = std::max(r_hi, r);
        }
    }
    check.expect(in_caps, "r within [2, n/4] at every generation (observed [" + fmt(r_lo) + ", " +
                              fmt(r_hi) + "])");

    const auto fitness_dep = parallel_runs(50, workers, base_seed(1108), [&](RandomSource& rng) {
        OneMaxProblem problem(n);
        return run_one_plus_lambda(problem, lambda, OplRatePolicy::fitness_dependent(),
                                   OplLambdaPolicy::fixed(), 10'000'000, rng);
    });
    check.expect(all_succeeded(fitness_dep), "fitness-dependent: all runs succeeded");
    const double ratio = mean_of(two_rate, OutcomeField::Evaluations) /
                         mean_of(fitness_dep, OutcomeField::Evaluations);
    check.expect_in(ratio, 0.5, 2.0, "2-rate/fitness-dependent mean ratio");
    res.pass = check.ok;
    return res;
}

// ------------------------------------------------------------ criterion 9

CriterionResult parity_trap(int workers) {
    CriterionResult res{"parity-trap"};
    Check check{res.details};
    (void)workers;
    const int n = 100;
    OneMaxProblem problem(n);
    BitString start(static_cast<std::size_t>(n), 1);
    start[3] = start[47] = start[92] = 0; // Hamming distance 3 from the optimum

    RandomSource rng(base_seed(1009), 0);
    RunOptions opts;
    opts.start = &start;
    const auto outcome =
        run_rls(problem, RlsPolicy::mixing({0.0, 1.0}), 100'001, rng, opts); // p = 0: 2-bit only
    check.expect(!outcome.success, "2-bit-only run never finds the optimum");
    check.expect(outcome.generations >= 100'000, "ran the full 1e5 generations");
    bool parity_constant = true;
    for (const auto& [fitness, evals] : outcome.fixed_target_trace)
        parity_constant &= (n - static_cast<int>(fitness)) % 2 == 1;
    parity_constant &= (n - static_cast<int>(outcome.best_fitness)) % 2 == 1;
    check.expect(parity_constant, "Hamming-distance parity stays odd over the whole run");

    OneMaxProblem small(8);
    const auto hitting = brute_force_hitting_time(small, MutationKernel::one_two_mixing(0.0));
    check.expect(!hitting.absorbing, "exact chain flags p=0 mixing as non-absorbing");
    res.pass = check.ok;
    return res;
}

// ----------------------------------------------------------- criterion 10

CriterionResult mst_mixing(int workers) {
    CriterionResult res{"mst-mixing"};
    Check check{res.details};
    const int triangles = 5;
    const GraphInstance graph = gen_connected_triangles(triangles, TriangleWeights{});
    const int m = graph.edge_count();
    const long long optimal_weight = kruskal_reference(graph);
    const auto budget = static_cast<std::uint64_t>(
        std::ceil(10.0 * m * m * std::log(graph.vertex_count * graph.w_max)));
    res.details.push_back("   budget 10 m^2 ln(n wmax) = " + std::to_string(budget) +
                          ", optimal weight " + std::to_string(optimal_weight));

    const auto mixed = parallel_runs(50, workers, base_seed(1010), [&](RandomSource& rng) {
        MstProblem problem(graph);
        return run_rls(problem, RlsPolicy::mixing({0.5, 0.5}), budget, rng);
    });
    int successes = 0;
    for (const auto& o : mixed) successes += o.success ? 1 : 0;
    check.expect(successes == 50, "mixed RLS (p=1/2) finds the minimum spanning tree in 50/50 runs (" +
                                      std::to_string(successes) + "/50)");

    // 1-bit only from a planted non-minimum spanning tree: per triangle one
    // light edge and the heavy edge; every 1-bit flip disconnects the tree
    // or adds an edge, so nothing is ever accepted as an improvement.
    BitString planted(static_cast<std::size_t>(m), 0);
    for (int t = 0; t < triangles; ++t) {
        planted[static_cast<std::size_t>(3 * t)] = 1;     // light edge (a,b)
        planted[static_cast<std::size_t>(3 * t + 2)] = 1; // heavy edge (b,c)
    }
    MstProblem problem(graph);
    const double planted_fitness = problem.evaluate(planted);
    RandomSource rng(base_seed(1110), 0);
    RunOptions opts;
    opts.start = &planted;
    const auto stuck = run_rls(problem, RlsPolicy::mixing({1.0}), 100'001, rng, opts);
    check.expect(!stuck.success && stuck.best_fitness == planted_fitness &&
                     stuck.fixed_target_trace.size() == 1,
                 "1-bit-only run never improves on the planted tree in 1e5 generations");
    res.pass = check.ok;
    return res;
}

// ----------------------------------------------------------- criterion 11

CriterionResult oracle_cross(int workers) {
    CriterionResult res{"oracle-cross"};
    Check check{res.details};

    // exact hitting time vs Monte Carlo for the (1+1) EA on OneMax, n=8
    {
        const int n = 8;
        OneMaxProblem problem(n);
        const auto exact =
            brute_force_hitting_time(problem, MutationKernel::standard_bit_mutation(1.0 / n));
        check.expect(exact.absorbing, "(1+1) EA chain is absorbing");
        const auto mc = parallel_runs(100'000, workers, base_seed(1011), [&](RandomSource& rng) {
            OneMaxProblem p(n);
            return run_one_plus_one(p, OneOneRatePolicy::static_rate(1.0 / n), 10'000'000, rng);
        });
        // iterations = evaluations - 1 (the initial sample is not a step)
        const double mc_mean = mean_of(mc, OutcomeField::Evaluations) - 1.0;
        check.expect_rel(mc_mean, exact.expected_time, 0.01,
                         "Monte Carlo mean iterations vs linear solve");
    }

    // the k=1 fixed-target DP reproduces n^2/2 exactly
    {
        const int n = 500;
        const auto dp = lo_fixed_target_dp(n, {1});
        const double total = dp.target_time[0][static_cast<std::size_t>(n)];
        check.expect(std::abs(total - n * n / 2.0) <= 1e-6 * (n * n / 2.0),
                     "DP total " + fmt(total) + " equals n^2/2 = " + fmt(n * n / 2.0));
    }

    // RLS k=1 on LeadingOnes, n=6: linear solve equals the DP total
    {
        const int n = 6;
        LeadingOnesProblem problem(n);
        const auto exact = brute_force_hitting_time(problem, MutationKernel::exact_k(1));
        const auto dp = lo_fixed_target_dp(n, {1});
        check.expect(exact.absorbing &&
                         std::abs(exact.expected_time - dp.target_time[0][6]) <= 1e-9 * 18.0,
                     "linear solve (" + fmt(exact.expected_time) + ") equals DP total (" +
                         fmt(dp.target_time[0][6]) + ")");
    }

    // drift formula vs exhaustive enumeration for every n <= 12
    {
        double max_err = 0.0;
        for (int n = 1; n <= 12; ++n) {
            for (int f = 0; f <= n; ++f) {
                for (int ell = 1; ell <= n; ++ell) {
                    // enumerate all flip subsets of size ell over a string
                    // with f matched positions
                    double total = 0.0;
                    long long count = 0;
                    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                        if (__builtin_popcount(mask) != ell) continue;
                        ++count;
                        const int flipped_wrong =
                            __builtin_popcount(mask >> f); // positions >= f are wrong bits
                        const int gain = 2 * flipped_wrong - ell;
                        if (gain > 0) total += gain;
                    }
                    const double exhaustive = total / static_cast<double>(count);
                    max_err = std::max(max_err, std::abs(exhaustive - onemax_drift(n, f, ell)));
                }
            }
        }
        check.expect(max_err <= 1e-12,
                     "drift formula matches exhaustive enumeration for all n <= 12 (max err " +
                         fmt(max_err) + ")");
    }
    res.pass = check.ok;
    return res;
}

// ----------------------------------------------------------- criterion 12

CriterionResult eps_greedy(int workers) {
    CriterionResult res{"eps-greedy"};
    Check check{res.details};
    const int n = 5000;
    auto table = std::make_shared<DriftMaxTable>(n);

    const auto adaptive = parallel_runs(100, workers, base_seed(1012), [&](RandomSource& rng) {
        OneMaxProblem problem(n);
        return run_rls(problem, RlsPolicy::drift_maximizing(table), 10'000'000, rng);
    });
    const double eps = std::pow(n, -0.01);
    const double delta = std::pow(n, -0.99);
    const auto greedy = parallel_runs(100, workers, base_seed(1112), [&](RandomSource& rng) {
        OneMaxProblem problem(n);
        return run_rls(problem, RlsPolicy::eps_greedy(eps, delta, 10), 10'000'000, rng);
    });
    check.expect(all_succeeded(adaptive) && all_succeeded(greedy), "all runs succeeded");
    const double mean_adaptive = mean_of(adaptive, OutcomeField::Evaluations);
    const double mean_greedy = mean_of(greedy, OutcomeField::Evaluations);
    check.expect_rel(mean_greedy, mean_adaptive, 0.03,
                     "eps-greedy mean (eps=n^-0.01=" + fmt(eps) + ", delta=n^-0.99=" + fmt(delta) +
                         ") vs drift-maximizing mean");
    res.pass = check.ok;
    return res;
}

// ----------------------------------------------------------- criterion 13

CriterionResult om_leading_constant(int workers) {
    CriterionResult res{"om-leading-constant"};
    Check check{res.details};
    const int n = 2000;
    const auto outcomes = parallel_runs(300, workers, base_seed(1013), [&](RandomSource& rng) {
        OneMaxProblem problem(n);
        return run_one_plus_one(problem, OneOneRatePolicy::static_rate(1.0 / n), 10'000'000, rng);
    });
    check.expect(all_succeeded(outcomes), "all 300 runs succeeded");
    check.expect_in(mean_of(outcomes, OutcomeField::Evaluations) / (n * std::log(n)), 2.3, 2.9,
                    "mean / (n ln n)");
    res.pass = check.ok;
    return res;
}

// ----------------------------------------------------------- criterion 14

CriterionResult rvalued_rls(int workers) {
    CriterionResult res{"rvalued-rls"};
    Check check{res.details};
    const int n = 200;
    const int r = 64;
    const double A = 1.7, b = 0.9;
    check.expect(2 * A * b - b - A > 0 && A + b > 2 && A * A * b > 1,
                 "hyper-parameters satisfy 2Ab-b-A>0, A+b>2, A^2 b>1");
    const auto budget =
        static_cast<std::uint64_t>(std::ceil(50.0 * n * (std::log(n) + std::log(r))));
    res.details.push_back("   budget 50 n (ln n + ln r) = " + std::to_string(budget));
    for (int mode = 1; mode <= 3; ++mode) {
        const auto outcomes = parallel_runs(
            100, workers, base_seed(1014 + static_cast<std::uint64_t>(mode)),
            [&](RandomSource& rng) {
                const auto problem = RValuedOneMax::random_instance(n, r, mode, rng);
                return run_rls_ab(problem, A, b, budget, rng, 1);
            });
        check.expect(all_succeeded(outcomes),
                     "mode " + std::to_string(mode) + ": all 100 runs reach the optimum");
        bool in_caps = true;
        double v_hi = 1.0;
        for (const auto& o : outcomes) {
            for (const auto& [gen, v] : o.parameter_trace) {
                in_caps &= v >= 1.0 && v <= r / 4.0;
                v_hi = std::max(v_hi, v);
            }
        }
        check.expect(in_caps, "mode " + std::to_string(mode) + ": velocities within [1, r/4] (max " +
                                  fmt(v_hi) + ")");
    }
    res.pass = check.ok;
    return res;
}

// ----------------------------------------------------------- criterion 15

CriterionResult plateau_mixing(int workers) {
    CriterionResult res{"plateau-mixing"};
    Check check{res.details};
    const int n = 60;
    const int k = 3;
    double plateau_size = 0.0; // N = sum_{i=1..k} C(n, i)
    {
        double c = 1.0;
        for (int i = 1; i <= k; ++i) {
            c = c * (n - i + 1) / i;
            plateau_size += c;
        }
    }
    const std::vector<std::vector<double>> mixings = {{1.0 / 3, 1.0 / 3, 1.0 / 3},
                                                      {0.6, 0.2, 0.2}};
    double means[2];
    for (int i = 0; i < 2; ++i) {
        const auto outcomes = parallel_runs(
            200, workers, base_seed(1015 + static_cast<std::uint64_t>(i)), [&](RandomSource& rng) {
                PlateauProblem problem(n, k);
                return run_rls(problem, RlsPolicy::mixing(mixings[static_cast<std::size_t>(i)]),
                               2'000'000, rng);
            });
        check.expect(all_succeeded(outcomes),
                     "mixing " + std::to_string(i + 1) + ": all 200 runs succeeded");
        means[i] = mean_of(outcomes, OutcomeField::Evaluations);
        check.expect_rel(means[i], plateau_size, 0.25,
                         "mixing " + std::to_string(i + 1) + " mean vs N = " + fmt(plateau_size));
    }
    const double spread = std::max(means[0], means[1]) / std::min(means[0], means[1]) - 1.0;
    check.expect(spread <= 0.15, "means of the two mixings within 15% (spread " + fmt(spread) + ")");
    res.pass = check.ok;
    return res;
}

using CriterionFn = CriterionResult (*)(int);

const std::vector<std::pair<std::string, CriterionFn>>& registry() {
    static const std::vector<std::pair<std::string, CriterionFn>> table = {
        {"rls-lo-baseline", rls_lo_baseline},
        {"lo-closed-form", lo_closed_form},
        {"lo-fitness-dependent", lo_fitness_dependent},
        {"fig1-adaptive-rls", fig1_adaptive_rls},
        {"hh-constants", hh_constants},
        {"drift-max-om", drift_max_om},
        {"ga-linear", ga_linear},
        {"two-rate-caps", two_rate_caps},
        {"parity-trap", parity_trap},
        {"mst-mixing", mst_mixing},
        {"oracle-cross", oracle_cross},
        {"eps-greedy", eps_greedy},
        {"om-leading-constant", om_leading_constant},
        {"rvalued-rls", rvalued_rls},
        {"plateau-mixing", plateau_mixing},
    };
    return table;
}

} // namespace

std::string CriterionResult::summary_line() const {
    std::string line = pass ? "[PASS] " : "[FAIL] ";
    line += id;
    line += " (";
    {
        std::ostringstream t;
        t.precision(1);
        t << std::fixed << seconds;
        line += t.str();
    }
    line += "s)";
    return line;
}

std::vector<std::string> criterion_ids() {
    std::vector<std::string> ids;
    for (const auto& [id, fn] : registry()) ids.push_back(id);
    return ids;
}

CriterionResult run_criterion(const std::string& id, int workers) {
    for (const auto& [name, fn] : registry()) {
        if (name == id) {
            const auto start = std::chrono::steady_clock::now();
            CriterionResult result = fn(workers);
            result.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return result;
        }
    }
    std::string known;
    for (const auto& [name, fn] : registry()) {
        if (!known.empty()) known += ", ";
        known += name;
    }
    throw std::invalid_argument("unknown repro criterion '" + id + "'; valid ids: " + known);
}

} // namespace paramctl::repro
