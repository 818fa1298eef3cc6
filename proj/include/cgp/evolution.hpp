#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cgp/benchmarks.hpp"
#include "cgp/genome.hpp"
#include "cgp/reorder.hpp"
#include "cgp/rng.hpp"

namespace cgp {

inline constexpr int kParents = 1;
inline constexpr int kOffspring = 4;
inline constexpr std::int64_t kRegressionBudget = 500'000;
inline constexpr std::int64_t kBooleanSafetyCap = 10'000'000;
inline constexpr double kRegressionThreshold = 0.01;

struct ESConfig {
    int num_computational = 100;
    ReorderStrategy strategy;
    /// Iteration budget; std::nullopt means unlimited.
    std::optional<std::int64_t> max_iterations;
    /// Boolean: solved when fitness >= threshold. Regression: when fitness < threshold.
    double convergence_threshold = 1.0;
    std::uint64_t seed = 0;
    /// Record every iteration in the trace instead of improvements plus every 100th.
    bool full_trace = false;
    std::int64_t trace_interval = 100;
    /// Re-evaluate the parent after every reorder and throw on any fitness change.
    bool verify_reorder = false;

    /// Defaults for the benchmark kind: unlimited budget (capped by the
    /// caller) and ratio 1.0 for Boolean; 5e5 iterations and MAE 0.01 for regression.
    static ESConfig defaults_for(const Benchmark& bench);
};

struct TracePoint {
    std::int64_t iteration = 0;
    double best_fitness = 0.0;

    bool operator==(const TracePoint&) const = default;
};

struct ConvergenceTrace {
    std::vector<TracePoint> points;
    bool operator==(const ConvergenceTrace&) const = default;
};

struct RunResult {
    std::uint64_t seed = 0;
    bool converged = false;
    std::int64_t iterations = 0;
    std::int64_t evaluations = 0;
    double final_train_fitness = 0.0;
    std::optional<double> final_test_fitness;
    int active_count = 0;
    std::vector<std::uint8_t> active_bitmap;
    ConvergenceTrace trace;
    Genotype final_genome;

    bool operator==(const RunResult&) const = default;
};

/// Whether larger fitness is better for this benchmark.
bool maximizes(const Benchmark& bench);

/// Index of the offspring that replaces the parent, or nullopt to keep the parent.
/// The best offspring (lowest index on ties) wins when it is equal or better.
std::optional<std::size_t> select_parent(double parent_fitness,
                                         std::span<const double> offspring_fitness,
                                         bool maximize);

/// Per-run fitness evaluation with reusable scratch space.
class FitnessFunction {
public:
    explicit FitnessFunction(const Benchmark& bench) : bench_(&bench) {}

    double train(const Genotype& genome, const ActiveSet& active);
    std::optional<double> test(const Genotype& genome);
    bool maximize() const { return maximizes(*bench_); }

private:
    const Benchmark* bench_;
    PackedEvaluator packed_;
    ColumnEvaluator columns_;
};

/// (1+4)-ES. Each iteration: maybe reorder the parent, breed four Single
/// mutants, evaluate them, keep the best if it is equal or better. Stops on
/// convergence or when the budget runs out.
RunResult run_es(const ESConfig& config, const Benchmark& bench, Rng& rng);

/// run_es with the stream derived from (master_seed, config.seed).
RunResult run_es(const ESConfig& config, const Benchmark& bench, std::uint64_t master_seed);

}  // namespace cgp
