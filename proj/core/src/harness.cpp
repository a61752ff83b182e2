#include "paramctl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace paramctl {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    parts.push_back(trim(current));
    return parts;
}

std::string join(const std::vector<std::string>& names, const char* sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += sep;
        out += names[i];
    }
    return out;
}

} // namespace

// ---------------------------------------------------------- KeyValueConfig

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("config line " + std::to_string(line_no) + ": empty section name");
            cfg.sections_[section]; // sections may be empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        if (section.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": key outside any [section]");
        if (!cfg.sections_[section].emplace(key, Entry{value}).second)
            throw ConfigError("config: duplicate key '" + section + "." + key + "'");
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str());
}

bool KeyValueConfig::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) != 0;
}

std::string KeyValueConfig::raw(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) throw ConfigError("config: missing section [" + section + "]");
    const auto it = s->second.find(key);
    if (it == s->second.end())
        throw ConfigError("config: missing key '" + key + "' in section [" + section + "]");
    it->second.consumed = true;
    return it->second.value;
}

std::string KeyValueConfig::get_string(const std::string& section, const std::string& key,
                                       std::optional<std::string> fallback) const {
    if (!has(section, key) && fallback) return *fallback;
    return raw(section, key);
}

double KeyValueConfig::get_real(const std::string& section, const std::string& key,
                                std::optional<double> fallback) const {
    if (!has(section, key) && fallback) return *fallback;
    const std::string v = raw(section, key);
    try {
        std::size_t used = 0;
        const double out = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + section + "." + key + "' is not a number: '" + v + "'");
    }
}

long long KeyValueConfig::get_int(const std::string& section, const std::string& key,
                                  std::optional<long long> fallback) const {
    if (!has(section, key) && fallback) return *fallback;
    const std::string v = raw(section, key);
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigError("config: key '" + section + "." + key + "' is not an integer: '" + v + "'");
    return out;
}

bool KeyValueConfig::get_bool(const std::string& section, const std::string& key,
                              std::optional<bool> fallback) const {
    if (!has(section, key) && fallback) return *fallback;
    const std::string v = raw(section, key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: key '" + section + "." + key + "' is not a boolean: '" + v + "'");
}

std::vector<double> KeyValueConfig::get_real_list(const std::string& section, const std::string& key,
                                                  std::optional<std::vector<double>> fallback) const {
    if (!has(section, key) && fallback) return *fallback;
    std::vector<double> out;
    for (const auto& part : split(raw(section, key), ',')) {
        try {
            out.push_back(std::stod(part));
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + section + "." + key + "' has a bad entry: '" + part + "'");
        }
    }
    return out;
}

std::vector<int> KeyValueConfig::get_int_list(const std::string& section, const std::string& key,
                                              std::optional<std::vector<int>> fallback) const {
    if (!has(section, key) && fallback) return *fallback;
    std::vector<int> out;
    for (double v : get_real_list(section, key)) {
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw ConfigError("config: key '" + section + "." + key + "' expects integers");
        out.push_back(i);
    }
    return out;
}

void KeyValueConfig::require_all_consumed() const {
    std::vector<std::string> unknown;
    for (const auto& [section, entries] : sections_)
        for (const auto& [key, entry] : entries)
            if (!entry.consumed) unknown.push_back(section + "." + key);
    if (!unknown.empty())
        throw ConfigError("config: unknown key(s): " + join(unknown));
}

// ------------------------------------------------------------- ProblemSpec

std::vector<std::string> ProblemSpec::known_names() {
    return {"onemax",  "leadingones",   "jump",     "plateau",
            "linear",  "mst-triangles", "mst-file", "rvalued-onemax"};
}

ProblemSpec ProblemSpec::from_config(const KeyValueConfig& cfg) {
    ProblemSpec spec;
    spec.name = cfg.get_string("problem", "name");
    const auto names = known_names();
    if (std::find(names.begin(), names.end(), spec.name) == names.end())
        throw ConfigError("unknown problem '" + spec.name + "'; valid names: " + join(names));
    spec.randomize_instance = cfg.get_bool("problem", "randomize_instance", false);
    if (spec.name == "jump") spec.jump_gap = static_cast<int>(cfg.get_int("problem", "k"));
    if (spec.name == "plateau") spec.plateau_gap = static_cast<int>(cfg.get_int("problem", "k"));
    if (spec.name == "linear") {
        spec.weights_low = cfg.get_real("problem", "weights_low", 1.0);
        spec.weights_high = cfg.get_real("problem", "weights_high", 2.0);
    }
    if (spec.name == "mst-triangles") {
        spec.triangles = static_cast<int>(cfg.get_int("problem", "triangles", 5));
        spec.triangle_weights.light = cfg.get_int("problem", "light_weight", 1);
        spec.triangle_weights.heavy = cfg.get_int("problem", "heavy_weight", 2);
        spec.triangle_weights.heavy_slot =
            static_cast<int>(cfg.get_int("problem", "heavy_slot", 2));
    }
    if (spec.name == "mst-file") spec.graph_file = cfg.get_string("problem", "graph");
    if (spec.name == "rvalued-onemax") {
        spec.alphabet = static_cast<int>(cfg.get_int("problem", "r"));
        spec.rvalued_mode = static_cast<int>(cfg.get_int("problem", "mode", 1));
    }
    return spec;
}

std::unique_ptr<BitProblem> ProblemSpec::make_bit(int n, RandomSource& rng) const {
    if (name == "onemax") {
        if (randomize_instance) return std::make_unique<OneMaxProblem>(n, random_bitstring(n, rng));
        return std::make_unique<OneMaxProblem>(n);
    }
    if (name == "leadingones") {
        if (randomize_instance)
            return std::make_unique<LeadingOnesProblem>(n, gen_random_lo_instance(n, rng));
        return std::make_unique<LeadingOnesProblem>(n);
    }
    if (name == "jump") return std::make_unique<JumpProblem>(n, jump_gap);
    if (name == "plateau") return std::make_unique<PlateauProblem>(n, plateau_gap);
    if (name == "linear")
        return std::make_unique<LinearProblem>(gen_random_linear_weights(n, weights_low, weights_high, rng));
    if (name == "mst-triangles")
        return std::make_unique<MstProblem>(gen_connected_triangles(triangles, triangle_weights));
    if (name == "mst-file") {
        std::ifstream in(graph_file);
        if (!in) throw ConfigError("problem: cannot open graph file '" + graph_file + "'");
        return std::make_unique<MstProblem>(parse_graph(in));
    }
    throw ConfigError("problem '" + name + "' does not produce bit-string instances");
}

std::unique_ptr<IntProblem> ProblemSpec::make_int(int n, RandomSource& rng) const {
    if (name != "rvalued-onemax")
        throw ConfigError("problem '" + name + "' does not produce integer-string instances");
    if (randomize_instance) {
        return std::make_unique<RValuedOneMax>(
            RValuedOneMax::random_instance(n, alphabet, rvalued_mode, rng));
    }
    return std::make_unique<RValuedOneMax>(n, alphabet, rvalued_mode,
                                           IntString(static_cast<std::size_t>(n), 0));
}

// ----------------------------------------------------------- AlgorithmSpec

std::vector<std::string> AlgorithmSpec::known_names() {
    return {"one-plus-one", "rls",     "best-of-set-rls", "rls-ab",    "one-plus-lambda",
            "ollga",        "mu-plus-one-rank", "sa",     "one-comma-lambda-sa",
            "portfolio",    "hh",      "island"};
}

std::vector<std::string> known_controller_names() {
    return {"one-fifth-rule",  "offspring-doubling", "two-rate",        "rank-based-rate",
            "time-dependent",  "fitness-lo",         "fitness-opl",     "fitness-ga-lambda",
            "probability-matching", "adaptive-pursuit", "ucb",          "velocity-eps-greedy",
            "self-adaptive-rate", "hh-simple-random", "hh-random-gradient", "hh-greedy",
            "hh-permutation",  "hh-grg",             "hh-sigma-grg",    "sigma-grg-tau",
            "migration-interval"};
}

namespace {

// rate keys: either an absolute `rate` or a `rate_numerator` c meaning c/n
double resolve_rate(const KeyValueConfig& cfg, const std::string& section, int n) {
    if (cfg.has(section, "rate")) return cfg.get_real(section, "rate");
    const double c = cfg.get_real(section, "rate_numerator", 1.0);
    return c / n;
}

} // namespace

AlgorithmSpec AlgorithmSpec::from_config(const KeyValueConfig& cfg) {
    AlgorithmSpec spec;
    spec.name = cfg.get_string("algorithm", "name");
    const auto names = known_names();
    if (std::find(names.begin(), names.end(), spec.name) == names.end())
        throw ConfigError("unknown algorithm '" + spec.name + "'; valid names: " + join(names));
    const std::string sec = "algorithm";

    if (spec.name == "one-plus-one") {
        spec.parameter_name = "rate";
        const std::string policy = cfg.get_string(sec, "policy", "static");
        if (policy == "static") {
            const bool absolute = cfg.has(sec, "rate");
            const double rate = absolute ? cfg.get_real(sec, "rate") : 0.0;
            const double numerator = absolute ? 0.0 : cfg.get_real(sec, "rate_numerator", 1.0);
            spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                               const RunOptions& opts) {
                const double r = absolute ? rate : numerator / p.dimension();
                return run_one_plus_one(p, OneOneRatePolicy::static_rate(r), budget, rng, opts);
            };
        } else if (policy == "time-dependent") {
            spec.run_bit = [](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                              const RunOptions& opts) {
                return run_one_plus_one(p, OneOneRatePolicy::time_dependent(), budget, rng, opts);
            };
        } else if (policy == "fitness-lo") {
            spec.run_bit = [](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                              const RunOptions& opts) {
                return run_one_plus_one(p, OneOneRatePolicy::fitness_lo(), budget, rng, opts);
            };
        } else if (policy == "self-adaptive") {
            const double A = cfg.get_real(sec, "factor", 2.0);
            const double r0 = cfg.get_real(sec, "tag_init", 2.0);
            const double lo = cfg.get_real(sec, "tag_lo", 2.0);
            const double hi = cfg.get_real(sec, "tag_hi", 0.0);
            spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                               const RunOptions& opts) {
                return run_one_plus_one(p, OneOneRatePolicy::self_adaptive(A, r0, lo, hi), budget,
                                        rng, opts);
            };
        } else {
            throw ConfigError("one-plus-one: unknown policy '" + policy +
                              "'; valid: static, time-dependent, fitness-lo, self-adaptive");
        }
        return spec;
    }

    if (spec.name == "rls") {
        spec.parameter_name = "k";
        const std::string policy = cfg.get_string(sec, "policy", "fixed");
        if (policy == "fixed") {
            const int k = static_cast<int>(cfg.get_int(sec, "k", 1));
            spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                               const RunOptions& opts) {
                return run_rls(p, RlsPolicy::fixed(k), budget, rng, opts);
            };
        } else if (policy == "best-of-set") {
            const auto strengths = cfg.get_int_list(sec, "strengths", std::vector<int>{1, 2, 3});
            spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                               const RunOptions& opts) {
                return run_rls(p, RlsPolicy::best_of_set(strengths), budget, rng, opts);
            };
        } else if (policy == "drift-max") {
            auto cache = std::make_shared<std::map<int, std::shared_ptr<DriftMaxTable>>>();
            auto mutex = std::make_shared<std::mutex>();
            spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                               const RunOptions& opts) {
                std::shared_ptr<DriftMaxTable> table;
                {
                    std::lock_guard<std::mutex> lock(*mutex);
                    auto& slot = (*cache)[p.dimension()];
                    if (!slot) slot = std::make_shared<DriftMaxTable>(p.dimension());
                    table = slot;
                }
                return run_rls(p, RlsPolicy::drift_maximizing(table), budget, rng, opts);
            };
        } else if (policy == "eps-greedy") {
            const double eps = cfg.get_real(sec, "eps");
            const double delta = cfg.get_real(sec, "delta");
            const int k = static_cast<int>(cfg.get_int(sec, "portfolio", 10));
            spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                               const RunOptions& opts) {
                return run_rls(p, RlsPolicy::eps_greedy(eps, delta, k), budget, rng, opts);
            };
        } else if (policy == "mixing") {
            const auto weights = cfg.get_real_list(sec, "weights");
            const bool wr = cfg.get_bool(sec, "two_bit_with_replacement", false);
            spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                               const RunOptions& opts) {
                return run_rls(p, RlsPolicy::mixing(weights, wr), budget, rng, opts);
            };
        } else {
            throw ConfigError("rls: unknown policy '" + policy +
                              "'; valid: fixed, best-of-set, drift-max, eps-greedy, mixing");
        }
        return spec;
    }

    if (spec.name == "best-of-set-rls") {
        spec.parameter_name = "k";
        const auto strengths = cfg.get_int_list(sec, "strengths", std::vector<int>{1, 2, 3});
        spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                           const RunOptions& opts) {
            return run_best_of_set_rls(p, strengths, budget, rng, opts);
        };
        return spec;
    }

    if (spec.name == "rls-ab") {
        spec.parameter_name = "velocity";
        const double A = cfg.get_real(sec, "a_factor", 1.7);
        const double b = cfg.get_real(sec, "b_factor", 0.9);
        spec.run_int = [=](const IntProblem& p, std::uint64_t budget, RandomSource& rng,
                           std::uint64_t stride) { return run_rls_ab(p, A, b, budget, rng, stride); };
        return spec;
    }

    if (spec.name == "one-plus-lambda") {
        const int lambda = static_cast<int>(cfg.get_int(sec, "lambda", 1));
        const std::string rate_policy = cfg.get_string(sec, "rate_policy", "static");
        OplRatePolicy rate;
        bool rate_absolute = cfg.has(sec, "rate");
        double rate_value = rate_absolute ? cfg.get_real(sec, "rate") : 0.0;
        double numerator = rate_absolute ? 0.0 : cfg.get_real(sec, "rate_numerator", 1.0);
        if (rate_policy == "two-rate")
            rate = OplRatePolicy::two_rate(cfg.get_real(sec, "r_init", 2.0));
        else if (rate_policy == "fitness")
            rate = OplRatePolicy::fitness_dependent();
        else if (rate_policy != "static")
            throw ConfigError("one-plus-lambda: unknown rate_policy '" + rate_policy +
                              "'; valid: static, two-rate, fitness");
        const std::string lambda_policy = cfg.get_string(sec, "lambda_policy", "static");
        OplLambdaPolicy lp = OplLambdaPolicy::fixed();
        if (lambda_policy == "double-reset")
            lp = OplLambdaPolicy::doubling(DoublingScheme::DoubleOrReset, SuccessCounting::Strict);
        else if (lambda_policy == "double-halve")
            lp = OplLambdaPolicy::doubling(DoublingScheme::DoubleOrHalve, SuccessCounting::Strict);
        else if (lambda_policy == "jansen")
            lp = OplLambdaPolicy::doubling(DoublingScheme::Jansen, SuccessCounting::AtLeastAsGood);
        else if (lambda_policy != "static")
            throw ConfigError("one-plus-lambda: unknown lambda_policy '" + lambda_policy +
                              "'; valid: static, double-reset, double-halve, jansen");
        if (cfg.has(sec, "success_counting")) {
            const std::string counting = cfg.get_string(sec, "success_counting");
            if (counting == "strict")
                lp.counting = SuccessCounting::Strict;
            else if (counting == "geq")
                lp.counting = SuccessCounting::AtLeastAsGood;
            else
                throw ConfigError("one-plus-lambda: unknown success_counting '" + counting + "'");
        }
        spec.parameter_name = rate_policy == "two-rate" ? "r" : "lambda";
        const std::string rp = rate_policy;
        spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                           const RunOptions& opts) {
            OplRatePolicy r = rate;
            if (rp == "static")
                r = OplRatePolicy::static_rate(rate_absolute ? rate_value
                                                             : numerator / p.dimension());
            return run_one_plus_lambda(p, lambda, r, lp, budget, rng, opts);
        };
        return spec;
    }

    if (spec.name == "ollga") {
        spec.parameter_name = "lambda";
        const std::string policy = cfg.get_string(sec, "lambda_policy", "one-fifth");
        GaLambdaPolicy ga;
        if (policy == "static")
            ga = GaLambdaPolicy::fixed(cfg.get_real(sec, "lambda", 1.0));
        else if (policy == "fitness")
            ga = GaLambdaPolicy::fitness_dependent();
        else if (policy == "one-fifth")
            ga = GaLambdaPolicy::one_fifth(cfg.get_real(sec, "update_strength", 1.5),
                                           cfg.get_real(sec, "lambda", 1.0));
        else
            throw ConfigError("ollga: unknown lambda_policy '" + policy +
                              "'; valid: static, fitness, one-fifth");
        spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                           const RunOptions& opts) { return run_ollga(p, ga, budget, rng, opts); };
        return spec;
    }

    if (spec.name == "mu-plus-one-rank") {
        spec.parameter_name = "rate";
        const int mu = static_cast<int>(cfg.get_int(sec, "mu"));
        spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                           const RunOptions& opts) {
            return run_mu_plus_one_rank(p, mu, budget, rng, opts);
        };
        return spec;
    }

    if (spec.name == "sa") {
        spec.parameter_name = "temperature";
        const std::string schedule = cfg.get_string(sec, "schedule", "constant");
        SaSchedule s;
        if (schedule == "constant")
            s = SaSchedule::metropolis(cfg.get_real(sec, "t0"));
        else if (schedule == "multiplicative")
            s = SaSchedule::multiplicative(cfg.get_real(sec, "t0"), cfg.get_real(sec, "alpha"));
        else if (schedule == "stepwise")
            s = SaSchedule::stepwise(cfg.get_real(sec, "t0"), cfg.get_real(sec, "alpha"),
                                     static_cast<std::uint64_t>(cfg.get_int(sec, "period")));
        else
            throw ConfigError("sa: unknown schedule '" + schedule +
                              "'; valid: constant, multiplicative, stepwise");
        spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                           const RunOptions& opts) {
            if (p.direction() == Direction::Minimize) {
                NegatedProblem maximized(p);
                RunOutcome out = run_sa(maximized, s, budget, rng, opts);
                out.best_fitness = -out.best_fitness;
                for (auto& [fitness, evals] : out.fixed_target_trace) fitness = -fitness;
                return out;
            }
            return run_sa(p, s, budget, rng, opts);
        };
        return spec;
    }

    if (spec.name == "one-comma-lambda-sa") {
        spec.parameter_name = "r";
        const int lambda = static_cast<int>(cfg.get_int(sec, "lambda"));
        const double A = cfg.get_real(sec, "factor", 2.0);
        const double lo = cfg.get_real(sec, "rate_lo", 2.0);
        const double hi = cfg.get_real(sec, "rate_hi", 0.0);
        spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                           const RunOptions& opts) {
            return run_self_adaptive_ocl(p, lambda, A, lo, hi, budget, rng, opts);
        };
        return spec;
    }

    if (spec.name == "portfolio") {
        const int lambda = static_cast<int>(cfg.get_int(sec, "lambda"));
        const bool absolute = cfg.has(sec, "rates");
        const auto rates = absolute ? cfg.get_real_list(sec, "rates") : std::vector<double>{};
        const auto numerators =
            absolute ? std::vector<double>{} : cfg.get_real_list(sec, "rate_numerators", {{1.0}});
        const double switch_p = cfg.get_real(sec, "switch_prob", 0.5);
        const std::string selection = cfg.get_string(sec, "selection", "tournament");
        PortfolioSelection sel;
        if (selection == "uniform")
            sel = PortfolioSelection::Uniform;
        else if (selection == "tournament")
            sel = PortfolioSelection::Tournament2;
        else if (selection == "best")
            sel = PortfolioSelection::Best;
        else
            throw ConfigError("portfolio: unknown selection '" + selection +
                              "'; valid: uniform, tournament, best");
        spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                           const RunOptions& opts) {
            std::vector<double> resolved = rates;
            if (!absolute) {
                resolved.clear();
                for (double c : numerators) resolved.push_back(c / p.dimension());
            }
            return run_non_elitist_portfolio(p, lambda, resolved, switch_p, sel, budget, rng, opts);
        };
        return spec;
    }

    if (spec.name == "hh") {
        spec.parameter_name = "k";
        const std::string mechanism = cfg.get_string(sec, "mechanism");
        HHConfig hh;
        if (mechanism == "simple-random")
            hh.mechanism = HHMechanism::SimpleRandom;
        else if (mechanism == "random-gradient")
            hh.mechanism = HHMechanism::RandomGradient;
        else if (mechanism == "greedy")
            hh.mechanism = HHMechanism::Greedy;
        else if (mechanism == "permutation")
            hh.mechanism = HHMechanism::Permutation;
        else if (mechanism == "grg")
            hh.mechanism = HHMechanism::GeneralizedRandomGradient;
        else if (mechanism == "sigma-grg")
            hh.mechanism = HHMechanism::SigmaRandomGradient;
        else
            throw ConfigError("hh: unknown mechanism '" + mechanism +
                              "'; valid: simple-random, random-gradient, greedy, permutation, "
                              "grg, sigma-grg");
        hh.strengths = cfg.get_int_list(sec, "strengths", std::vector<int>{1, 2});
        hh.two_bit_with_replacement = cfg.get_bool(sec, "two_bit_with_replacement", true);
        hh.tau = cfg.get_real(sec, "tau", 0.0);
        hh.sigma = static_cast<int>(cfg.get_int(sec, "sigma", 1));
        hh.adjust_tau = cfg.get_bool(sec, "adjust_tau", false);
        spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                           const RunOptions& opts) {
            return run_single_point_hh(p, hh, budget, rng, opts);
        };
        return spec;
    }

    if (spec.name == "island") {
        spec.parameter_name = "tau";
        const int islands = static_cast<int>(cfg.get_int(sec, "islands"));
        const std::string topology = cfg.get_string(sec, "topology", "complete");
        Topology topo;
        if (topology == "ring")
            topo = Topology::Ring;
        else if (topology == "grid")
            topo = Topology::Grid;
        else if (topology == "torus")
            topo = Topology::Torus;
        else if (topology == "complete")
            topo = Topology::Complete;
        else
            throw ConfigError("island: unknown topology '" + topology +
                              "'; valid: ring, grid, torus, complete");
        const std::string scheme = cfg.get_string(sec, "scheme", "double-reset");
        MigrationScheme ms;
        if (scheme == "double-reset")
            ms = MigrationScheme::DoubleOrOne;
        else if (scheme == "double-halve")
            ms = MigrationScheme::DoubleOrHalve;
        else
            throw ConfigError("island: unknown scheme '" + scheme +
                              "'; valid: double-reset, double-halve");
        spec.run_bit = [=](const BitProblem& p, std::uint64_t budget, RandomSource& rng,
                           const RunOptions& opts) {
            return run_island_model(p, islands, topo, ms, budget, rng, opts);
        };
        return spec;
    }

    throw ConfigError("unhandled algorithm '" + spec.name + "'");
}

// -------------------------------------------------------- ExperimentConfig

ExperimentConfig ExperimentConfig::from_config(const KeyValueConfig& cfg) {
    ExperimentConfig ec;
    ec.problem = ProblemSpec::from_config(cfg);
    ec.algorithm = AlgorithmSpec::from_config(cfg);
    const bool needs_int = ec.problem.is_int_problem();
    if (needs_int && !ec.algorithm.run_int)
        throw ConfigError("algorithm '" + ec.algorithm.name +
                          "' does not run on integer-string problems");
    if (!needs_int && !ec.algorithm.run_bit)
        throw ConfigError("algorithm '" + ec.algorithm.name +
                          "' requires an integer-string problem");

    ec.runs = static_cast<int>(cfg.get_int("experiment", "runs", 1));
    if (ec.runs < 1) throw ConfigError("experiment: runs must be >= 1");
    ec.dimensions = cfg.get_int_list("experiment", "dimensions");
    if (ec.dimensions.empty()) throw ConfigError("experiment: dimensions must not be empty");
    for (int n : ec.dimensions)
        if (n < 1) throw ConfigError("experiment: dimensions must be positive");
    const long long budget = cfg.get_int("experiment", "budget");
    if (budget < 1) throw ConfigError("experiment: budget must be >= 1");
    ec.budget = static_cast<std::uint64_t>(budget);
    ec.master_seed = static_cast<std::uint64_t>(cfg.get_int("experiment", "seed", 1));
    if (const char* env = std::getenv("PARAMCTL_SEED")) {
        std::uint64_t v = 0;
        const auto [p, err] = std::from_chars(env, env + std::string(env).size(), v);
        if (err != std::errc() || *p != '\0')
            throw ConfigError("PARAMCTL_SEED must be an unsigned integer");
        ec.master_seed = v;
    }
    if (cfg.has("experiment", "target_fitness"))
        ec.target_fitness = cfg.get_real("experiment", "target_fitness");
    ec.trace_stride = static_cast<std::uint64_t>(cfg.get_int("experiment", "trace_stride", 0));
    ec.workers = static_cast<int>(cfg.get_int("experiment", "workers", 0));
    if (ec.workers < 0) throw ConfigError("experiment: workers must be >= 0");
    ec.out_dir = cfg.get_string("experiment", "out_dir", "");
    cfg.require_all_consumed();
    return ec;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    return from_config(KeyValueConfig::parse_file(path));
}

// ----------------------------------------------------------- run_experiment

namespace {

RunOutcome execute_single_run(const ExperimentConfig& config, int dimension, int run_index) {
    RandomSource rng(config.master_seed, static_cast<std::uint64_t>(run_index));
    if (config.problem.is_int_problem()) {
        const auto problem = config.problem.make_int(dimension, rng);
        return config.algorithm.run_int(*problem, config.budget, rng, config.trace_stride);
    }
    const auto problem = config.problem.make_bit(dimension, rng);
    RunOptions opts;
    opts.param_stride = config.trace_stride;
    return config.algorithm.run_bit(*problem, config.budget, rng, opts);
}

bool run_succeeded(const RunOutcome& outcome, const CsvContext& ctx) {
    if (!ctx.target_fitness) return outcome.success;
    if (ctx.direction == Direction::Maximize) return outcome.best_fitness >= *ctx.target_fitness;
    return outcome.best_fitness <= *ctx.target_fitness;
}

std::string runs_csv_row(const RunOutcome& o, const CsvContext& ctx, std::size_t run_id) {
    std::string row;
    row += std::to_string(run_id);
    row += ',';
    row += std::to_string(ctx.dimension);
    row += ',';
    row += ctx.problem;
    row += ',';
    row += ctx.algorithm;
    row += ',';
    row += std::to_string(o.evaluations);
    row += ',';
    row += std::to_string(o.generations);
    row += ',';
    row += format_number(o.best_fitness);
    row += ',';
    row += run_succeeded(o, ctx) ? '1' : '0';
    row += ',';
    row += std::to_string(o.seed);
    row += '\n';
    return row;
}

Direction problem_direction(const ExperimentConfig& config, int dimension) {
    RandomSource probe(config.master_seed, 0);
    if (config.problem.is_int_problem()) return Direction::Minimize;
    return config.problem.make_bit(dimension, probe)->direction();
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    ExperimentResult result;
    const int workers = config.workers > 0
                            ? config.workers
                            : std::max(1u, std::thread::hardware_concurrency());
    for (int n : config.dimensions) {
        DimensionResults dim;
        dim.dimension = n;
        dim.outcomes.resize(static_cast<std::size_t>(config.runs));

        CsvContext ctx{config.problem.name,     config.algorithm.name,
                       n,                       config.target_fitness,
                       problem_direction(config, n), config.algorithm.parameter_name};

        std::ofstream runs_file;
        if (!config.out_dir.empty()) {
            const auto dir = std::filesystem::path(config.out_dir) /
                             (config.dimensions.size() > 1 ? "n" + std::to_string(n) : "");
            std::filesystem::create_directories(dir);
            runs_file.open(dir / "runs.csv", std::ios::binary);
            if (!runs_file)
                throw std::runtime_error("cannot write to output directory '" + dir.string() + "'");
            runs_file << "run_id,n,problem,algorithm,evaluations,generations,best_fitness,success,seed\n";
            runs_file.flush();
        }

        std::mutex flush_mutex;
        std::vector<char> done(static_cast<std::size_t>(config.runs), 0);
        int next_to_flush = 0;
        const auto flush_ready = [&]() {
            // caller holds flush_mutex; writes rows in run order as they
            // become available
            while (next_to_flush < config.runs && done[static_cast<std::size_t>(next_to_flush)]) {
                if (runs_file.is_open()) {
                    runs_file << runs_csv_row(dim.outcomes[static_cast<std::size_t>(next_to_flush)],
                                              ctx, static_cast<std::size_t>(next_to_flush));
                    runs_file.flush();
                }
                ++next_to_flush;
            }
        };

        std::atomic<int> next_run{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        const auto worker = [&]() {
            for (;;) {
                const int i = next_run.fetch_add(1);
                if (i >= config.runs) return;
                try {
                    RunOutcome outcome = execute_single_run(config, n, i);
                    std::lock_guard<std::mutex> lock(flush_mutex);
                    dim.outcomes[static_cast<std::size_t>(i)] = std::move(outcome);
                    done[static_cast<std::size_t>(i)] = 1;
                    flush_ready();
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        };

        if (workers == 1 || config.runs == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            const int count = std::min(workers, config.runs);
            pool.reserve(static_cast<std::size_t>(count));
            for (int t = 0; t < count; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }
        if (failure) std::rethrow_exception(failure);

        if (!config.out_dir.empty()) {
            const auto dir = std::filesystem::path(config.out_dir) /
                             (config.dimensions.size() > 1 ? "n" + std::to_string(n) : "");
            std::ofstream ft(dir / "fixed_target.csv", std::ios::binary);
            ft << fixed_target_csv(dim.outcomes);
            std::ofstream pt(dir / "parameter_trace.csv", std::ios::binary);
            pt << parameter_trace_csv(dim.outcomes, ctx.parameter_name);
        }
        result.per_dimension.push_back(std::move(dim));
    }
    return result;
}

// --------------------------------------------------------------- statistics

double outcome_field(const RunOutcome& outcome, OutcomeField field) {
    switch (field) {
    case OutcomeField::Evaluations:
        return static_cast<double>(outcome.evaluations);
    case OutcomeField::Generations:
        return static_cast<double>(outcome.generations);
    default:
        return outcome.best_fitness;
    }
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
    // linear interpolation between closest ranks
    if (sorted.empty()) return 0.0;
    if (sorted.size() == 1) return sorted.front();
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - w) + sorted[hi] * w;
}

} // namespace

SummaryStats summarize(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("summarize: empty input");
    SummaryStats s;
    s.count = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    s.median = quantile_sorted(sorted, 0.5);
    s.q05 = quantile_sorted(sorted, 0.05);
    s.q95 = quantile_sorted(sorted, 0.95);

    // percentile bootstrap of the mean, 2000 resamples, dedicated stream
    constexpr int kResamples = 2000;
    RandomSource rng(0x9D0B0075u, 0);
    std::vector<double> means;
    means.reserve(kResamples);
    for (int b = 0; b < kResamples; ++b) {
        double total = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            total += values[rng.next_below(values.size())];
        means.push_back(total / static_cast<double>(values.size()));
    }
    std::sort(means.begin(), means.end());
    s.ci_lo = quantile_sorted(means, 0.025);
    s.ci_hi = quantile_sorted(means, 0.975);
    s.success_rate = 0.0;
    return s;
}

SummaryStats summarize(std::span<const RunOutcome> outcomes, OutcomeField field) {
    if (outcomes.empty()) throw std::invalid_argument("summarize: empty input");
    std::vector<double> values;
    values.reserve(outcomes.size());
    int successes = 0;
    for (const auto& o : outcomes) {
        values.push_back(outcome_field(o, field));
        successes += o.success ? 1 : 0;
    }
    SummaryStats s = summarize(values);
    s.success_rate = static_cast<double>(successes) / static_cast<double>(outcomes.size());
    return s;
}

OracleComparison compare_to_oracle(const SummaryStats& stats, double oracle_value,
                                   double relative_tolerance) {
    OracleComparison c;
    c.mean = stats.mean;
    c.oracle = oracle_value;
    c.tolerance = relative_tolerance;
    c.relative_error = std::abs(stats.mean - oracle_value) / std::abs(oracle_value);
    c.pass = c.relative_error <= relative_tolerance;
    return c;
}

// --------------------------------------------------------------------- CSV

std::string format_number(double value) {
    if (value == static_cast<double>(static_cast<long long>(value)) &&
        std::abs(value) < 1e15) {
        return std::to_string(static_cast<long long>(value));
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string runs_csv(std::span<const RunOutcome> outcomes, const CsvContext& ctx) {
    std::string out = "run_id,n,problem,algorithm,evaluations,generations,best_fitness,success,seed\n";
    for (std::size_t i = 0; i < outcomes.size(); ++i) out += runs_csv_row(outcomes[i], ctx, i);
    return out;
}

std::string fixed_target_csv(std::span<const RunOutcome> outcomes) {
    std::string out = "run_id,fitness,first_hit_evaluations\n";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        for (const auto& [fitness, evals] : outcomes[i].fixed_target_trace) {
            out += std::to_string(i);
            out += ',';
            out += format_number(fitness);
            out += ',';
            out += std::to_string(evals);
            out += '\n';
        }
    }
    return out;
}

std::string parameter_trace_csv(std::span<const RunOutcome> outcomes,
                                const std::string& parameter_name) {
    std::string out = "run_id,generation,parameter,value\n";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        for (const auto& [generation, value] : outcomes[i].parameter_trace) {
            out += std::to_string(i);
            out += ',';
            out += std::to_string(generation);
            out += ',';
            out += parameter_name;
            out += ',';
            out += format_number(value);
            out += '\n';
        }
    }
    return out;
}

void emit_csv_files(const std::filesystem::path& dir, std::span<const RunOutcome> outcomes,
                    const CsvContext& ctx) {
    std::filesystem::create_directories(dir);
    const auto write = [&](const char* name, const std::string& content) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + (dir / name).string() + "'");
        out << content;
    };
    write("runs.csv", runs_csv(outcomes, ctx));
    write("fixed_target.csv", fixed_target_csv(outcomes));
    write("parameter_trace.csv", parameter_trace_csv(outcomes));
}

} // namespace paramctl
