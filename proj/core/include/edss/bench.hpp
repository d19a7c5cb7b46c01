#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edss/instgen.hpp"
#include "edss/model.hpp"
#include "edss/rlga.hpp"

namespace edss {

enum class Algorithm { Rlga, RlgaWe, ClassicGa, Cha };

[[nodiscard]] std::string_view to_string(Algorithm algo);
/// Accepts rlga, rlga_we, classic_ga, cha. Throws InputError otherwise.
[[nodiscard]] Algorithm parse_algorithm(std::string_view name);

/// Runs one algorithm once. `cfg.seed` seeds the stochastic ones; cha
/// ignores the solver settings and reports a single decode.
[[nodiscard]] RunResult run_algorithm(Algorithm algo, const Instance& instance, const SolverConfig& cfg);

/// An instance file on disk, or a generator spec.
struct InstanceSource {
    std::string name;
    std::filesystem::path path;
    std::optional<GenSpec> spec;
};

struct ExperimentConfig {
    std::vector<InstanceSource> instances;
    std::vector<Algorithm> algorithms{Algorithm::Rlga, Algorithm::ClassicGa, Algorithm::Cha};
    int runs = 30;
    std::uint64_t base_seed = 1;
    SolverConfig solver;
    std::filesystem::path out_dir; // empty: keep results in memory only
    unsigned threads = 0;          // 0: hardware concurrency
    bool timing = false;           // record wall time in the output files
    std::size_t trace_points = 500;

    void validate() const;
};

/// One solver run as stored in the raw results table.
struct RunRecord {
    std::string instance;
    Algorithm algorithm = Algorithm::Rlga;
    std::uint64_t seed = 0;
    Profit profit = 0;
    double cpu_ms = 0.0;
    std::size_t decodes = 0;
    bool feasible = true;
    std::vector<TracePoint> trace; // thinned to ExperimentConfig::trace_points
};

struct StatRow {
    std::string instance;
    std::string algorithm;
    double best = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;
    std::optional<double> p_value;     // against the reference algorithm
    std::optional<double> mean_cpu_ms; // only with timing enabled
    std::string error;                 // non-empty: the instance could not be run
};

struct ExperimentResult {
    std::vector<StatRow> rows;
    std::vector<RunRecord> runs;
};

/// Runs every (instance, algorithm) pair `runs` times with seeds
/// base_seed .. base_seed + runs - 1, fanning out over worker threads.
/// Every emitted plan is re-validated. With an output directory set,
/// writes results.csv, runs.csv, errors.csv, instances/ and traces/.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Two-sided Mann-Whitney U test, normal approximation with tie
/// correction. Both samples need at least 5 values.
[[nodiscard]] double rank_sum_test(std::span<const double> a, std::span<const double> b);

/// Best / mean / sample std per (instance, algorithm), in first-seen
/// order, with p-values against `reference`.
[[nodiscard]] std::vector<StatRow> summarize(std::span<const RunRecord> runs, Algorithm reference, bool timing);

inline constexpr std::string_view kResultsHeader = "instance,algorithm,best,mean,std_dev,p_value,mean_cpu_ms";

[[nodiscard]] std::string stat_rows_to_csv(std::span<const StatRow> rows);
[[nodiscard]] std::string runs_to_csv(std::span<const RunRecord> runs, bool timing);
[[nodiscard]] std::vector<RunRecord> runs_from_csv(std::string_view text);

} // namespace edss
