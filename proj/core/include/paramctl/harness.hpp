#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "paramctl/algorithms.hpp"
#include "paramctl/problems.hpp"

namespace paramctl {

/// Raised for malformed configs, unknown names, or out-of-range values.
/// The CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat key-value configuration with [section] headers. Keys are
/// lower_snake_case; `#` starts a comment. Every key must be consumed by the
/// component that owns its section, so typos become hard errors.
class KeyValueConfig {
public:
    static KeyValueConfig parse_string(const std::string& text);
    static KeyValueConfig parse_file(const std::filesystem::path& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           std::optional<std::string> fallback = std::nullopt) const;
    double get_real(const std::string& section, const std::string& key,
                    std::optional<double> fallback = std::nullopt) const;
    long long get_int(const std::string& section, const std::string& key,
                      std::optional<long long> fallback = std::nullopt) const;
    bool get_bool(const std::string& section, const std::string& key,
                  std::optional<bool> fallback = std::nullopt) const;
    std::vector<double> get_real_list(const std::string& section, const std::string& key,
                                      std::optional<std::vector<double>> fallback = std::nullopt) const;
    std::vector<int> get_int_list(const std::string& section, const std::string& key,
                                  std::optional<std::vector<int>> fallback = std::nullopt) const;

    /// Throws ConfigError naming every key that was never read.
    void require_all_consumed() const;

private:
    std::string raw(const std::string& section, const std::string& key) const;
    struct Entry {
        std::string value;
        mutable bool consumed = false;
    };
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

/// Problem family plus parameters; instances are materialized per dimension
/// (and per run when the instance is randomized, drawing from the run's own
/// stream).
struct ProblemSpec {
    std::string name;
    bool randomize_instance = false;
    int jump_gap = 2;
    int plateau_gap = 3;
    double weights_low = 1.0, weights_high = 2.0; // linear
    int triangles = 5;                            // mst-triangles
    TriangleWeights triangle_weights;
    std::string graph_file; // mst-file
    int alphabet = 2;       // rvalued-onemax
    int rvalued_mode = 1;

    bool is_int_problem() const { return name == "rvalued-onemax"; }
    std::unique_ptr<BitProblem> make_bit(int n, RandomSource& rng) const;
    std::unique_ptr<IntProblem> make_int(int n, RandomSource& rng) const;

    static ProblemSpec from_config(const KeyValueConfig& cfg);
    static std::vector<std::string> known_names();
};

/// Algorithm runner built from a config section. Exactly one of the two
/// callables is set, matching the problem genotype.
struct AlgorithmSpec {
    std::string name;
    std::string parameter_name = "parameter"; // what the parameter trace records
    std::function<RunOutcome(const BitProblem&, std::uint64_t, RandomSource&, const RunOptions&)>
        run_bit;
    std::function<RunOutcome(const IntProblem&, std::uint64_t, RandomSource&, std::uint64_t)>
        run_int;

    static AlgorithmSpec from_config(const KeyValueConfig& cfg);
    static std::vector<std::string> known_names();
};

std::vector<std::string> known_controller_names();

struct ExperimentConfig {
    ProblemSpec problem;
    AlgorithmSpec algorithm;
    std::vector<int> dimensions;
    int runs = 1;
    std::uint64_t master_seed = 1;
    std::uint64_t budget = 0;
    std::optional<double> target_fitness;
    std::uint64_t trace_stride = 0;
    int workers = 0; // 0 = hardware concurrency
    std::string out_dir;

    /// Builds and validates from parsed key-values; honors the
    /// PARAMCTL_SEED environment override.
    static ExperimentConfig from_config(const KeyValueConfig& cfg);
    static ExperimentConfig from_file(const std::filesystem::path& path);
};

struct DimensionResults {
    int dimension = 0;
    std::vector<RunOutcome> outcomes; // ordered by run index
};

struct ExperimentResult {
    std::vector<DimensionResults> per_dimension;
};

/// Runs the configured experiment: run i draws from stream_id = i, runs may
/// execute on a worker pool, and outputs are identical whatever the worker
/// count. When out_dir is set, CSV files are written there (per dimension),
/// with runs.csv rows flushed in run order as results complete.
ExperimentResult run_experiment(const ExperimentConfig& config);

// ------------------------------------------------------------- statistics

struct SummaryStats {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double median = 0.0;
    double q05 = 0.0;
    double q95 = 0.0;
    double ci_lo = 0.0; // bootstrap 95% CI of the mean, 2000 resamples
    double ci_hi = 0.0;
    double success_rate = 0.0;
};

enum class OutcomeField { Evaluations, Generations, BestFitness };

double outcome_field(const RunOutcome& outcome, OutcomeField field);
SummaryStats summarize(std::span<const double> values);
SummaryStats summarize(std::span<const RunOutcome> outcomes, OutcomeField field);

struct OracleComparison {
    bool pass = false;
    double mean = 0.0;
    double oracle = 0.0;
    double relative_error = 0.0;
    double tolerance = 0.0;
};

/// Passes iff |mean - oracle| / |oracle| <= tolerance.
OracleComparison compare_to_oracle(const SummaryStats& stats, double oracle_value,
                                   double relative_tolerance);

// -------------------------------------------------------------------- CSV

/// Locale-independent shortest round-trip formatting (LF line endings).
std::string format_number(double value);

struct CsvContext {
    std::string problem;
    std::string algorithm;
    int dimension = 0;
    std::optional<double> target_fitness; // success column uses it when set
    Direction direction = Direction::Maximize;
    std::string parameter_name = "parameter";
};

std::string runs_csv(std::span<const RunOutcome> outcomes, const CsvContext& ctx);
std::string fixed_target_csv(std::span<const RunOutcome> outcomes);
std::string parameter_trace_csv(std::span<const RunOutcome> outcomes,
                                const std::string& parameter_name = "parameter");

/// Writes runs.csv / fixed_target.csv / parameter_trace.csv under dir.
void emit_csv_files(const std::filesystem::path& dir, std::span<const RunOutcome> outcomes,
                    const CsvContext& ctx);

} // namespace paramctl
