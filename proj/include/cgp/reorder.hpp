#pragma once

#include <string_view>
#include <vector>

#include "cgp/genome.hpp"
#include "cgp/rng.hpp"

namespace cgp {

enum class ReorderKind { none, original, equidistant, uniform, negbias, leftskew };

std::string_view to_string(ReorderKind kind);
/// One of none|original|equidistant|uniform|negbias|leftskew; throws ConfigError.
ReorderKind parse_reorder_kind(std::string_view name);
/// True for the kinds that take a reorder probability (negbias, leftskew).
bool uses_reorder_probability(ReorderKind kind);

struct ReorderStrategy {
    ReorderKind kind = ReorderKind::none;
    double p_reorder = 1.0;

    /// Builds a strategy, forcing p_reorder to 1 for kinds without the
    /// hyperparameter. Throws ConfigError if p is outside [0, 1].
    static ReorderStrategy make(ReorderKind kind, double p_reorder = 1.0);

    bool operator==(const ReorderStrategy&) const = default;
};

/// Target layout for the placement-based operators, in global positions.
struct PlacementSets {
    std::vector<int> active_positions;
    std::vector<int> inactive_positions;
    int start = 0;
    int end = 0;
};

/// floor(s + i*(e-s)/n) for i = 1..n, ascending. Requires s <= e and
/// 1 <= n <= e-s+1; otherwise throws std::invalid_argument.
std::vector<int> lin_space(int start, int end, int count);

/// Beta(6,1) by inverse CDF.
double beta61_from_uniform(double u);
double sample_beta61(Rng& rng);

/// Turns sorted continuous samples in [0, 1] into strictly increasing integer
/// positions in [start, end]. Each sample lands in its floor cell of
/// [start, end+1); collisions advance right, and if that overruns `end`, a
/// leftward sweep from `end` restores room. Sample order is kept.
std::vector<int> positions_from_unit_samples(std::vector<double> samples, int start, int end);

/// Complement of `active_positions` in [start, end].
PlacementSets make_placement(std::vector<int> active_positions, int start, int end);

/// Moves active nodes (kept in relative order) to `placement.active_positions` and
/// inactive nodes (kept in relative order) to the rest, remaps every connection,
/// then repairs forward references. Phenotype is unchanged.
Genotype apply_placement(const Genotype& genome, const ActiveSet& active,
                         const PlacementSets& placement, Rng& rng, int* repairs = nullptr);

/// Resamples every forward-pointing connection gene uniformly from [0, p).
/// Returns the number of genes repaired. A forward gene read by an active node
/// throws InvariantViolation.
int repair_forward_connections(Genotype& genome, Rng& rng);

Genotype reorder_original(const Genotype& genome, Rng& rng);
Genotype reorder_equidistant(const Genotype& genome, Rng& rng);
Genotype reorder_uniform(const Genotype& genome, Rng& rng);
Genotype reorder_negbias(const Genotype& genome, Rng& rng);
Genotype reorder_leftskew(const Genotype& genome, Rng& rng);

/// Dispatch on `kind` (none returns a copy).
Genotype reorder(const Genotype& genome, ReorderKind kind, Rng& rng);

/// Applies the strategy's operator with probability p_reorder.
Genotype maybe_reorder(const Genotype& genome, const ReorderStrategy& strategy, Rng& rng);

}  // namespace cgp
