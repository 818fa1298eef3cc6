#include "cgp/mutation.hpp"

namespace cgp {

namespace {

// Uniform over [0, domain) but never `current` when there is any alternative.
int resample(Rng& rng, int domain, int current) {
    if (domain <= 1) return static_cast<int>(uniform_below(rng, domain));
    const int drawn = static_cast<int>(uniform_below(rng, domain - 1));
    return drawn >= current ? drawn + 1 : drawn;
}

}  // namespace

Genotype single_mutation(const Genotype& genome, const ActiveSet& active, Rng& rng,
                         MutationStats* stats) {
    Genotype child = genome;
    const auto& p = genome.params;
    constexpr int kGenesPerNode = 1 + kArity;
    const std::int64_t node_genes = static_cast<std::int64_t>(child.nodes.size()) * kGenesPerNode;
    const std::int64_t total = node_genes + static_cast<std::int64_t>(child.outputs.size());
    const int functions = function_count(p.function_set);

    int attempts = 0;
    for (;;) {
        ++attempts;
        const std::int64_t gene = uniform_below(rng, total);
        if (gene >= node_genes) {
            int& target = child.outputs[static_cast<std::size_t>(gene - node_genes)];
            const int before = target;
            target = resample(rng, p.output_domain(), before);
            if (target != before) break;
            continue;
        }
        const auto k = static_cast<std::size_t>(gene / kGenesPerNode);
        const int slot = static_cast<int>(gene % kGenesPerNode);
        NodeGene& node = child.nodes[k];
        bool feeds_output = active.is_active(k);
        bool changed = false;
        if (slot == 0) {
            const int before = node.function_id;
            node.function_id = resample(rng, functions, before);
            changed = node.function_id != before;
        } else {
            const int c = slot - 1;
            int& conn = node.connections[static_cast<std::size_t>(c)];
            const int before = conn;
            conn = resample(rng, child.position_of(k), before);
            changed = conn != before;
            feeds_output = feeds_output && c < function_arity(p.function_set, node.function_id);
        }
        if (feeds_output && changed) break;
    }
    if (stats != nullptr) stats->attempts = attempts;
    return child;
}

}  // namespace cgp
