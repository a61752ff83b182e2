#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "paramctl/harness.hpp"
#include "paramctl/oracles.hpp"
#include "paramctl/repro.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAcceptanceFailure = 1;
constexpr int kExitConfigError = 2;

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            std::optional<std::string> out_dir, std::optional<int> workers) {
    paramctl::ExperimentConfig config = paramctl::ExperimentConfig::from_file(config_path);
    if (seed) config.master_seed = *seed;
    if (out_dir) config.out_dir = *out_dir;
    if (workers) config.workers = *workers;
    const auto result = paramctl::run_experiment(config);
    for (const auto& dim : result.per_dimension) {
        const auto evals = paramctl::summarize(dim.outcomes, paramctl::OutcomeField::Evaluations);
        std::cout << "n=" << dim.dimension << " runs=" << dim.outcomes.size()
                  << " success_rate=" << evals.success_rate << " mean_evaluations=" << evals.mean
                  << " median=" << evals.median << " ci95=[" << evals.ci_lo << ", " << evals.ci_hi
                  << "]\n";
    }
    if (!config.out_dir.empty()) std::cout << "wrote CSV files under " << config.out_dir << "\n";
    return kExitOk;
}

int cmd_oracle(const std::string& name, int n, double p, int fitness, int strength,
               const std::vector<int>& strengths, int target, const std::string& graph_file) {
    using namespace paramctl;
    if (name == "lo-expected-time") {
        std::cout << lo_expected_time(n, p) << "\n";
        return kExitOk;
    }
    if (name == "onemax-drift") {
        std::cout << onemax_drift(n, fitness, strength) << "\n";
        return kExitOk;
    }
    if (name == "drift-max-strength") {
        std::cout << drift_max_strength(n, fitness) << "\n";
        return kExitOk;
    }
    if (name == "lo-fixed-target") {
        const auto dp = lo_fixed_target_dp(n, strengths);
        const int phi = target >= 0 ? target : n;
        for (std::size_t s = 0; s < dp.strengths.size(); ++s)
            std::cout << "k=" << dp.strengths[s] << ": "
                      << dp.target_time[s][static_cast<std::size_t>(phi)] << "\n";
        std::cout << "best-of-set: " << dp.best_target_time[static_cast<std::size_t>(phi)] << "\n";
        return kExitOk;
    }
    if (name == "mixed-bounds") {
        const auto bounds = mixed_bounds(n, p);
        std::cout << "upper " << bounds.upper << "\nlower " << bounds.lower << "\n";
        return kExitOk;
    }
    if (name == "kruskal") {
        std::ifstream in(graph_file);
        if (!in) throw ConfigError("oracle kruskal: cannot open '" + graph_file + "'");
        std::cout << kruskal_reference(parse_graph(in)) << "\n";
        return kExitOk;
    }
    if (name == "doubling-parallel-bound") {
        std::cout << doubling_parallel_bound_onemax(n) << "\n";
        return kExitOk;
    }
    throw ConfigError("unknown oracle '" + name +
                      "'; valid names: lo-expected-time, onemax-drift, drift-max-strength, "
                      "lo-fixed-target, mixed-bounds, kruskal, doubling-parallel-bound");
}

int cmd_repro(const std::string& id, int workers) {
    using namespace paramctl::repro;
    std::vector<std::string> ids;
    if (id == "all")
        ids = criterion_ids();
    else
        ids.push_back(id);
    bool all_pass = true;
    for (const auto& criterion : ids) {
        const auto result = run_criterion(criterion, workers);
        std::cout << result.summary_line() << "\n";
        for (const auto& line : result.details) std::cout << "    " << line << "\n";
        all_pass &= result.pass;
    }
    return all_pass ? kExitOk : kExitAcceptanceFailure;
}

int cmd_list() {
    std::cout << "problems:\n";
    for (const auto& name : paramctl::ProblemSpec::known_names()) std::cout << "  " << name << "\n";
    std::cout << "algorithms:\n";
    for (const auto& name : paramctl::AlgorithmSpec::known_names())
        std::cout << "  " << name << "\n";
    std::cout << "controllers:\n";
    for (const auto& name : paramctl::known_controller_names()) std::cout << "  " << name << "\n";
    std::cout << "repro criteria:\n";
    for (const auto& name : paramctl::repro::criterion_ids()) std::cout << "  " << name << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"paramctl - dynamic parameter control benchmark laboratory"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    auto* run = app.add_subcommand("run", "run an experiment described by a config file");
    std::string config_path;
    run->add_option("--config", config_path, "experiment config file")->required();
    std::optional<std::uint64_t> seed;
    run->add_option("--seed", seed, "override the master seed");
    std::optional<std::string> out_dir;
    run->add_option("--out", out_dir, "override the output directory");
    std::optional<int> run_workers;
    run->add_option("--workers", run_workers, "worker threads (1 = serial)");

    auto* oracle = app.add_subcommand("oracle", "print an exact oracle value");
    std::string oracle_name;
    oracle->add_option("name", oracle_name, "oracle name")->required();
    int n = 0;
    oracle->add_option("--n", n, "dimension");
    double p = 0.0;
    oracle->add_option("--p", p, "probability parameter");
    int fitness = 0;
    oracle->add_option("--f", fitness, "fitness level");
    int strength = 1;
    oracle->add_option("--l", strength, "mutation strength");
    std::vector<int> strengths{1, 2, 3};
    oracle->add_option("--strengths", strengths, "strength set")->delimiter(',');
    int target = -1;
    oracle->add_option("--target", target, "fixed-target fitness (default: the optimum)");
    std::string graph_file;
    oracle->add_option("--graph", graph_file, "edge-list graph file");

    auto* repro = app.add_subcommand("repro", "run a named acceptance experiment");
    std::string criterion;
    repro->add_option("id", criterion, "criterion id or 'all'")->required();
    int repro_workers = 0;
    repro->add_option("--workers", repro_workers, "worker threads (0 = all cores)");

    auto* list = app.add_subcommand("list", "list problems, algorithms, and controllers");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(config_path, seed, out_dir, run_workers);
        if (oracle->parsed())
            return cmd_oracle(oracle_name, n, p, fitness, strength, strengths, target, graph_file);
        if (repro->parsed()) return cmd_repro(criterion, repro_workers);
        if (list->parsed()) return cmd_list();
        return kExitConfigError;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            app.exit(e); // --help
            return kExitOk;
        }
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return kExitConfigError;
    } catch (const paramctl::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAcceptanceFailure;
    }
}
