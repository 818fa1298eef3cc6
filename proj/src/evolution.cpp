#include "cgp/evolution.hpp"

#include <array>
#include <string>

#include "cgp/errors.hpp"
#include "cgp/mutation.hpp"

namespace cgp {

ESConfig ESConfig::defaults_for(const Benchmark& bench) {
    ESConfig config;
    if (is_boolean(bench)) {
        config.max_iterations = std::nullopt;
        config.convergence_threshold = 1.0;
    } else {
        config.max_iterations = kRegressionBudget;
        config.convergence_threshold = kRegressionThreshold;
    }
    return config;
}

bool maximizes(const Benchmark& bench) { return is_boolean(bench); }

std::optional<std::size_t> select_parent(double parent_fitness,
                                         std::span<const double> offspring_fitness,
                                         bool maximize) {
    if (offspring_fitness.empty()) return std::nullopt;
    std::size_t best = 0;
    for (std::size_t i = 1; i < offspring_fitness.size(); ++i) {
        const bool better = maximize ? offspring_fitness[i] > offspring_fitness[best]
                                     : offspring_fitness[i] < offspring_fitness[best];
        if (better) best = i;
    }
    const double f = offspring_fitness[best];
    const bool accept = maximize ? f >= parent_fitness : f <= parent_fitness;
    if (!accept) return std::nullopt;
    return best;
}

double FitnessFunction::train(const Genotype& genome, const ActiveSet& active) {
    if (const auto* b = std::get_if<BooleanBenchmark>(bench_)) {
        return boolean_fitness(genome, active, *b, packed_);
    }
    return mae_fitness(genome, active, std::get<RegressionBenchmark>(*bench_).train, columns_);
}

std::optional<double> FitnessFunction::test(const Genotype& genome) {
    const auto* r = std::get_if<RegressionBenchmark>(bench_);
    if (r == nullptr || !r->test) return std::nullopt;
    return mae_fitness(genome, decode_active(genome), *r->test, columns_);
}

namespace {

bool solved(double fitness, double threshold, bool maximize) {
    return maximize ? fitness >= threshold : fitness < threshold;
}

}  // namespace

RunResult run_es(const ESConfig& config, const Benchmark& bench, Rng& rng) {
    const GraphParams params = params_for(bench, config.num_computational);
    FitnessFunction fitness(bench);
    const bool maximize = fitness.maximize();

    Genotype parent = random_genome(params, rng);
    ActiveSet parent_active = decode_active(parent);
    double parent_fitness = fitness.train(parent, parent_active);

    RunResult result;
    result.seed = config.seed;
    result.trace.points.push_back({0, parent_fitness});

    std::array<Genotype, kOffspring> children;
    std::array<ActiveSet, kOffspring> children_active;
    std::array<double, kOffspring> children_fitness{};

    std::int64_t iteration = 0;
    bool done = solved(parent_fitness, config.convergence_threshold, maximize);
    while (!done && (!config.max_iterations || iteration < *config.max_iterations)) {
        if (config.strategy.kind != ReorderKind::none) {
            parent = maybe_reorder(parent, config.strategy, rng);
            parent_active = decode_active(parent);
            if (config.verify_reorder) {
                const double check = fitness.train(parent, parent_active);
                if (check != parent_fitness) {
                    throw InvariantViolation("reorder changed parent fitness at iteration " +
                                             std::to_string(iteration + 1));
                }
            }
        }
        for (int c = 0; c < kOffspring; ++c) {
            children[c] = single_mutation(parent, parent_active, rng);
            children_active[c] = decode_active(children[c]);
            children_fitness[c] = fitness.train(children[c], children_active[c]);
        }
        ++iteration;
        const double previous = parent_fitness;
        if (auto pick = select_parent(parent_fitness, children_fitness, maximize)) {
            parent = std::move(children[*pick]);
            parent_active = std::move(children_active[*pick]);
            parent_fitness = children_fitness[*pick];
        }
        done = solved(parent_fitness, config.convergence_threshold, maximize);
        const bool improved = parent_fitness != previous;
        if (config.full_trace || improved || iteration % config.trace_interval == 0 || done) {
            result.trace.points.push_back({iteration, parent_fitness});
        }
    }
    if (result.trace.points.back().iteration != iteration) {
        result.trace.points.push_back({iteration, parent_fitness});
    }

    result.converged = done;
    result.iterations = iteration;
    result.evaluations = kOffspring * iteration;
    result.final_train_fitness = parent_fitness;
    result.final_test_fitness = fitness.test(parent);
    result.active_count = parent_active.count;
    result.active_bitmap = parent_active.active;
    result.final_genome = std::move(parent);
    return result;
}

RunResult run_es(const ESConfig& config, const Benchmark& bench, std::uint64_t master_seed) {
    Rng rng = derive_stream(master_seed, config.seed);
    return run_es(config, bench, rng);
}

}  // namespace cgp
