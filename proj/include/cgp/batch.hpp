#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cgp/evolution.hpp"

namespace cgp {

struct BatchOptions {
    /// Worker threads; 0 uses every available core.
    int workers = 0;
    std::uint64_t master_seed = 0;
};

/// Runs one ES per seed across an OpenMP worker pool. Each run is
/// single-threaded with its own stream, so results match `reference::run_batch`
/// exactly regardless of worker count. Output is in `seeds` order.
std::vector<RunResult> run_batch(const ESConfig& base, const Benchmark& bench,
                                 std::span<const std::uint64_t> seeds,
                                 const BatchOptions& options = {});

/// Thread count actually used for `requested` (0 = all cores).
int resolve_workers(int requested);

}  // namespace cgp
