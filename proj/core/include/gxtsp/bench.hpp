#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gxtsp/crossover.hpp"
#include "gxtsp/ga.hpp"
#include "gxtsp/instance.hpp"

namespace gxtsp {

/// (cost - optimum) / optimum * 100.
double quality_percent(std::int64_t cost, std::int64_t optimum);

/// Optimal tour length for bundled benchmark instances, keyed by name
/// (case-insensitive, a trailing ".tsp" is ignored). Empty if unknown.
std::optional<std::int64_t> known_optimum(const std::string& name);

struct ExperimentSpec {
    /// Paths to TSPLIB files, or built-in names ("demo8", "fig1") that
    /// resolve to the bundled 8-node instance.
    std::vector<std::string> instance_paths;
    std::vector<CrossoverOp> operators;
    int runs = 30;
    GAConfig ga{};
    /// Run r of every (instance, operator) cell uses seed base_seed + r.
    std::uint64_t base_seed = 1;
    std::string output_csv; // empty: don't write a file
    int threads = 0;        // 0: one per hardware thread
};

/// Aggregated results of one (instance, operator) cell.
struct RunReport {
    std::string instance;
    CrossoverOp op = CrossoverOp::igx;
    int runs = 0;
    std::int64_t best = 0;
    std::int64_t worst = 0;
    double avg = 0.0;
    double avg_outer_loops = 0.0;
    double avg_seconds = 0.0;
    /// Percent above the known optimum; unset when the optimum is unknown.
    std::optional<double> best_quality;
    std::optional<double> avg_quality;
    std::optional<double> worst_quality;
};

/// Runs every (instance, operator) cell of the spec. Validation problems
/// (unreadable files, runs < 1, empty operator list, ...) are all collected
/// before anything runs and reported in a single exception message.
std::vector<RunReport> run_experiment(const ExperimentSpec& spec);

/// CSV with header
/// instance,operator,runs,best,best_q,avg,avg_q,worst,worst_q,avg_loops,avg_secs.
/// Quality columns are blank when the optimum is unknown.
std::string to_csv(const std::vector<RunReport>& reports);

/// Plain-text table; costs annotated like "428(0.47%)" when the optimum
/// is known.
std::string format_table(const std::vector<RunReport>& reports);

void write_csv_file(const std::string& path, const std::vector<RunReport>& reports);

} // namespace gxtsp
