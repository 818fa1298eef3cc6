#include "cgp/batch.hpp"

#include <exception>

#include <omp.h>

namespace cgp {

int resolve_workers(int requested) {
    return requested > 0 ? requested : omp_get_num_procs();
}

std::vector<RunResult> run_batch(const ESConfig& base, const Benchmark& bench,
                                 std::span<const std::uint64_t> seeds,
                                 const BatchOptions& options) {
    std::vector<RunResult> results(seeds.size());
    std::exception_ptr failure;
    const auto count = static_cast<std::int64_t>(seeds.size());
    const int workers = resolve_workers(options.workers);

#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            ESConfig config = base;
            config.seed = seeds[static_cast<std::size_t>(i)];
            results[static_cast<std::size_t>(i)] = run_es(config, bench, options.master_seed);
        } catch (...) {
#pragma omp critical(cgp_batch_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

}  // namespace cgp
