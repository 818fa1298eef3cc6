#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cgp/evolution.hpp"

namespace cgp {

/// Probability of each computational position being active in the final solution.
struct PositionalBiasHistogram {
    std::vector<double> probability;
    /// position / (N - 1); 0 when N == 1.
    std::vector<double> normalized_position;
    std::size_t runs = 0;
};

/// Throws AggregationError when `results` is empty or mixes genome sizes.
PositionalBiasHistogram active_distribution(std::span<const RunResult> results);

/// Mean probability per tenth of the genome; position k falls in bin floor(10k/N).
std::vector<double> decile_means(std::span<const double> probability);

struct VariantInfo {
    std::string benchmark;
    std::string variant;
    int num_computational = 0;
    double p_reorder = 1.0;
};

struct SummaryRow {
    std::string benchmark;
    std::string variant;
    int nodes = 0;
    double p_reorder = 1.0;
    std::size_t runs = 0;
    /// Over every run; a run that never converged counts its whole budget.
    double mean_i2s = 0.0;
    /// Population standard deviation of the same values.
    double sd_i2s = 0.0;
    /// Over converged runs only.
    std::optional<double> mean_i2s_converged;
    double mean_active = 0.0;
    double success_rate = 0.0;
    double mean_train_fitness = 0.0;
    std::optional<double> mean_test_fitness;
};

/// Throws AggregationError on empty input.
SummaryRow summarize(std::span<const RunResult> results, const VariantInfo& info);

struct ConvergenceCurve {
    std::vector<std::int64_t> iterations;
    std::vector<double> mean;
    std::vector<double> sd;  ///< population sd over runs
};

/// Best-so-far fitness of a trace at `iteration` (step interpolation; the final
/// value holds after the trace ends).
double trace_value_at(const ConvergenceTrace& trace, std::int64_t iteration);

/// Mean and sd across runs at each grid iteration. Independent of trace order.
ConvergenceCurve convergence_mean(std::span<const ConvergenceTrace> traces,
                                  std::span<const std::int64_t> grid);

/// 0, 1, ..., then roughly log-spaced up to `last` (inclusive), without duplicates.
std::vector<std::int64_t> log_grid(std::int64_t last, int points_per_decade = 20);

}  // namespace cgp
