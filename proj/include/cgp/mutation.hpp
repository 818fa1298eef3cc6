#pragma once

#include "cgp/genome.hpp"
#include "cgp/rng.hpp"

namespace cgp {

struct MutationStats {
    int attempts = 0;  ///< genes resampled, including the final active hit
};

/// Single mutation: resample uniformly chosen genes until one that feeds the
/// phenotype changes. A gene feeds the phenotype if it is an output gene, the
/// function gene of an active node, or a connection gene an active node reads.
/// Activity is taken from `active`, the parent's decode.
Genotype single_mutation(const Genotype& genome, const ActiveSet& active, Rng& rng,
                         MutationStats* stats = nullptr);

}  // namespace cgp
