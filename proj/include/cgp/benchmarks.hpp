#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cgp/genome.hpp"
#include "cgp/kernels.hpp"
#include "cgp/rng.hpp"

namespace cgp {

/// Complete truth table of a Boolean task. Rows are stored row-major, one byte per bit,
/// and packed once for the bit-sliced kernel.
///
/// Bit conventions: parity3 and decode4_16 read input j as bit j of the row index
/// (LSB first); encode16_4 emits the hot input's index LSB first; multiply3 takes
/// operand a on inputs 0-2 and b on inputs 3-5, each MSB first, and emits the
/// 6-bit product MSB first.
struct BooleanBenchmark {
    std::string name;
    int num_inputs = 0;
    int num_outputs = 0;
    std::size_t rows = 0;
    std::vector<std::uint8_t> inputs;   ///< rows x num_inputs
    std::vector<std::uint8_t> targets;  ///< rows x num_outputs
    PackedTable packed;

    std::span<const std::uint8_t> input_row(std::size_t r) const {
        return {inputs.data() + r * static_cast<std::size_t>(num_inputs),
                static_cast<std::size_t>(num_inputs)};
    }
    std::span<const std::uint8_t> target_row(std::size_t r) const {
        return {targets.data() + r * static_cast<std::size_t>(num_outputs),
                static_cast<std::size_t>(num_outputs)};
    }
};

/// Labelled points for one output. Row-major inputs plus a column-major copy for
/// the kernel.
struct Dataset {
    int num_inputs = 0;
    std::vector<double> inputs;  ///< size() x num_inputs
    std::vector<double> targets;
    ColumnData columns;

    std::size_t size() const { return targets.size(); }
    std::span<const double> input_row(std::size_t i) const {
        return {inputs.data() + i * static_cast<std::size_t>(num_inputs),
                static_cast<std::size_t>(num_inputs)};
    }

    static Dataset from_rows(int num_inputs, std::vector<double> inputs,
                             std::vector<double> targets);
};

struct RegressionBenchmark {
    std::string name;
    Dataset train;
    std::optional<Dataset> test;
};

using Benchmark = std::variant<BooleanBenchmark, RegressionBenchmark>;

std::span<const std::string_view> boolean_benchmark_names();
std::span<const std::string_view> regression_benchmark_names();
bool is_boolean_benchmark(std::string_view name);

/// parity3 | encode16_4 | decode4_16 | multiply3. Unknown names throw ConfigError.
BooleanBenchmark build_boolean(std::string_view name);
/// nguyen7 | koza3 | pagie1 | keijzer6. Only the uniformly sampled sets use `rng`.
RegressionBenchmark build_regression(std::string_view name, Rng& rng);
/// Either kind by name; regression sampling is seeded from `dataset_seed`.
Benchmark build_benchmark(std::string_view name, std::uint64_t dataset_seed);

// Target equations.
double nguyen7(double x);
double koza3(double x);
double pagie1(double x, double y);
double keijzer6(double x);

/// Points a, a+c, ... up to b inclusive, each computed as a + k*c.
std::vector<double> grid_axis(double a, double b, double step);

const std::string& benchmark_name(const Benchmark& bench);
bool is_boolean(const Benchmark& bench);
/// Graph shape for `bench` with N computational nodes.
GraphParams params_for(const Benchmark& bench, int num_computational);

/// Fraction of rows where every output bit matches. Throws ConfigError on an
/// I/O shape mismatch.
double boolean_fitness(const Genotype& genome, const BooleanBenchmark& bench);
double boolean_fitness(const Genotype& genome, const ActiveSet& active,
                       const BooleanBenchmark& bench, PackedEvaluator& evaluator);

/// Mean absolute error on `data`. Throws ConfigError if `data` is empty or the
/// shapes disagree.
double mae_fitness(const Genotype& genome, const Dataset& data);
double mae_fitness(const Genotype& genome, const ActiveSet& active, const Dataset& data,
                   ColumnEvaluator& evaluator);

/// CSV with header `x0[,x1],y`, values written round-trip exact.
void write_dataset_csv(const std::filesystem::path& path, const Dataset& data);
Dataset read_dataset_csv(const std::filesystem::path& path);

/// Regression benchmark with its datasets cached under `cache_dir` as
/// `<name>_seed<seed>_{train,test}.csv`; created on first use.
RegressionBenchmark load_or_build_regression(std::string_view name, std::uint64_t dataset_seed,
                                             const std::filesystem::path& cache_dir);

}  // namespace cgp
