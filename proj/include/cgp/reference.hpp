#pragma once

// Straightforward serial implementations. Kept as oracles for the packed and
// columnar kernels and the OpenMP batch runner.

#include <cstdint>
#include <span>
#include <vector>

#include "cgp/batch.hpp"
#include "cgp/benchmarks.hpp"
#include "cgp/evolution.hpp"

namespace cgp::reference {

/// Row by row through `evaluate`.
double boolean_fitness(const Genotype& genome, const BooleanBenchmark& bench);
/// Point by point through `evaluate`.
double mae_fitness(const Genotype& genome, const Dataset& data);
/// Every output of every row, row-major.
std::vector<std::uint8_t> truth_table_outputs(const Genotype& genome,
                                              const BooleanBenchmark& bench);
/// Predictions at every point, point-major.
std::vector<double> dataset_outputs(const Genotype& genome, const Dataset& data);

/// One run after another on the calling thread.
std::vector<RunResult> run_batch(const ESConfig& base, const Benchmark& bench,
                                 std::span<const std::uint64_t> seeds,
                                 const BatchOptions& options = {});

}  // namespace cgp::reference
