#include "cgp/reference.hpp"

#include <cmath>

#include "cgp/errors.hpp"

namespace cgp::reference {

std::vector<std::uint8_t> truth_table_outputs(const Genotype& genome,
                                              const BooleanBenchmark& bench) {
    std::vector<std::uint8_t> out;
    out.reserve(bench.rows * static_cast<std::size_t>(bench.num_outputs));
    for (std::size_t r = 0; r < bench.rows; ++r) {
        const auto row = evaluate(genome, bench.input_row(r));
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

double boolean_fitness(const Genotype& genome, const BooleanBenchmark& bench) {
    if (genome.params.num_inputs != bench.num_inputs ||
        genome.params.num_outputs != bench.num_outputs) {
        throw ConfigError("genome shape does not match " + bench.name);
    }
    std::size_t correct = 0;
    for (std::size_t r = 0; r < bench.rows; ++r) {
        const auto got = evaluate(genome, bench.input_row(r));
        const auto want = bench.target_row(r);
        if (std::equal(got.begin(), got.end(), want.begin(), want.end())) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(bench.rows);
}

std::vector<double> dataset_outputs(const Genotype& genome, const Dataset& data) {
    std::vector<double> out;
    out.reserve(data.size() * genome.outputs.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto row = evaluate(genome, data.input_row(i));
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

double mae_fitness(const Genotype& genome, const Dataset& data) {
    if (data.size() == 0) throw ConfigError("mean absolute error over an empty dataset");
    double sum = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        sum += std::fabs(data.targets[i] - evaluate(genome, data.input_row(i))[0]);
    }
    return sum / static_cast<double>(data.size());
}

std::vector<RunResult> run_batch(const ESConfig& base, const Benchmark& bench,
                                 std::span<const std::uint64_t> seeds,
                                 const BatchOptions& options) {
    std::vector<RunResult> results;
    results.reserve(seeds.size());
    for (std::uint64_t seed : seeds) {
        ESConfig config = base;
        config.seed = seed;
        results.push_back(run_es(config, bench, options.master_seed));
    }
    return results;
}

}  // namespace cgp::reference
