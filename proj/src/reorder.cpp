#include "cgp/reorder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cgp/errors.hpp"

namespace cgp {

std::string_view to_string(ReorderKind kind) {
    switch (kind) {
        case ReorderKind::none: return "none";
        case ReorderKind::original: return "original";
        case ReorderKind::equidistant: return "equidistant";
        case ReorderKind::uniform: return "uniform";
        case ReorderKind::negbias: return "negbias";
        case ReorderKind::leftskew: return "leftskew";
    }
    return "none";
}

ReorderKind parse_reorder_kind(std::string_view name) {
    for (auto kind : {ReorderKind::none, ReorderKind::original, ReorderKind::equidistant,
                      ReorderKind::uniform, ReorderKind::negbias, ReorderKind::leftskew}) {
        if (to_string(kind) == name) return kind;
    }
    throw ConfigError("unknown reorder variant '" + std::string(name) +
                      "' (expected none|original|equidistant|uniform|negbias|leftskew)");
}

bool uses_reorder_probability(ReorderKind kind) {
    return kind == ReorderKind::negbias || kind == ReorderKind::leftskew;
}

ReorderStrategy ReorderStrategy::make(ReorderKind kind, double p_reorder) {
    if (!(p_reorder >= 0.0 && p_reorder <= 1.0)) {
        throw ConfigError("p_reorder must lie in [0, 1], got " + std::to_string(p_reorder));
    }
    return {kind, uses_reorder_probability(kind) ? p_reorder : 1.0};
}

std::vector<int> lin_space(int start, int end, int count) {
    if (start > end || count < 1 || count > end - start + 1) {
        throw std::invalid_argument("lin_space: need s <= e and 1 <= n <= e-s+1 (s=" +
                                    std::to_string(start) + ", e=" + std::to_string(end) +
                                    ", n=" + std::to_string(count) + ")");
    }
    // Integer arithmetic gives the exact floor; computing the step in floating
    // point first can land a hair below an integer.
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count));
    const std::int64_t span = end - start;
    for (std::int64_t i = 1; i <= count; ++i) {
        out.push_back(start + static_cast<int>(i * span / count));
    }
    return out;
}

double beta61_from_uniform(double u) { return std::pow(u, 1.0 / 6.0); }

double sample_beta61(Rng& rng) { return beta61_from_uniform(unit_uniform(rng)); }

std::vector<int> positions_from_unit_samples(std::vector<double> samples, int start, int end) {
    const auto n = samples.size();
    std::sort(samples.begin(), samples.end());
    const double cells = static_cast<double>(end - start + 1);
    std::vector<int> pos(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int cell = start + static_cast<int>(std::floor(samples[i] * cells));
        pos[i] = std::clamp(cell, start, end);
        if (i > 0 && pos[i] <= pos[i - 1]) pos[i] = pos[i - 1] + 1;
    }
    int next = end + 1;
    for (std::size_t i = n; i-- > 0;) {
        if (pos[i] >= next) pos[i] = next - 1;
        next = pos[i];
    }
    return pos;
}

PlacementSets make_placement(std::vector<int> active_positions, int start, int end) {
    PlacementSets sets;
    sets.start = start;
    sets.end = end;
    sets.active_positions = std::move(active_positions);
    sets.inactive_positions.reserve(static_cast<std::size_t>(end - start + 1) -
                                    sets.active_positions.size());
    auto it = sets.active_positions.begin();
    for (int p = start; p <= end; ++p) {
        if (it != sets.active_positions.end() && *it == p) {
            ++it;
        } else {
            sets.inactive_positions.push_back(p);
        }
    }
    return sets;
}

int repair_forward_connections(Genotype& genome, Rng& rng) {
    // Throws if an active node reads forward.
    (void)decode_active(genome);
    int repairs = 0;
    for (std::size_t k = 0; k < genome.nodes.size(); ++k) {
        const int position = genome.position_of(k);
        for (int& c : genome.nodes[k].connections) {
            if (c >= position) {
                c = static_cast<int>(uniform_below(rng, position));
                ++repairs;
            }
        }
    }
    return repairs;
}

namespace {

// new_position[old] for inputs and computational nodes.
Genotype relocate(const Genotype& genome, const std::vector<int>& new_position) {
    Genotype out;
    out.params = genome.params;
    out.nodes.resize(genome.nodes.size());
    for (std::size_t k = 0; k < genome.nodes.size(); ++k) {
        NodeGene node = genome.nodes[k];
        for (int& c : node.connections) c = new_position[static_cast<std::size_t>(c)];
        out.node_at(new_position[static_cast<std::size_t>(genome.position_of(k))]) = node;
    }
    out.outputs.reserve(genome.outputs.size());
    for (int o : genome.outputs) out.outputs.push_back(new_position[static_cast<std::size_t>(o)]);
    return out;
}

std::vector<int> identity_positions(const Genotype& genome) {
    std::vector<int> map(static_cast<std::size_t>(genome.params.output_domain()));
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = static_cast<int>(i);
    return map;
}

Genotype place_with(const Genotype& genome, Rng& rng,
                    std::vector<int> (*active_positions)(int start, int end, int n, Rng& rng)) {
    const ActiveSet active = decode_active(genome);
    if (active.count == 0) return genome;
    const int start = genome.params.first_computational();
    const int end = genome.params.last_computational();
    auto placement = make_placement(active_positions(start, end, active.count, rng), start, end);
    return apply_placement(genome, active, placement, rng);
}

std::vector<int> equidistant_positions(int start, int end, int n, Rng&) {
    return lin_space(start, end, n);
}

std::vector<int> negbias_positions(int start, int end, int n, Rng&) {
    (void)start;
    std::vector<int> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = end - n + 1 + i;
    return out;
}

std::vector<int> uniform_positions(int start, int end, int n, Rng& rng) {
    std::vector<double> samples(static_cast<std::size_t>(n));
    for (double& s : samples) s = unit_uniform(rng);
    return positions_from_unit_samples(std::move(samples), start, end);
}

std::vector<int> leftskew_positions(int start, int end, int n, Rng& rng) {
    std::vector<double> samples(static_cast<std::size_t>(n));
    for (double& s : samples) s = sample_beta61(rng);
    return positions_from_unit_samples(std::move(samples), start, end);
}

}  // namespace

Genotype apply_placement(const Genotype& genome, const ActiveSet& active,
                         const PlacementSets& placement, Rng& rng, int* repairs) {
    const std::size_t n = static_cast<std::size_t>(active.count);
    if (placement.active_positions.size() != n ||
        placement.inactive_positions.size() != genome.nodes.size() - n) {
        throw InvariantViolation("placement sizes do not match the active set");
    }
    std::vector<int> new_position = identity_positions(genome);
    std::size_t next_active = 0;
    std::size_t next_inactive = 0;
    for (std::size_t k = 0; k < genome.nodes.size(); ++k) {
        const int target = active.is_active(k) ? placement.active_positions[next_active++]
                                               : placement.inactive_positions[next_inactive++];
        new_position[static_cast<std::size_t>(genome.position_of(k))] = target;
    }
    Genotype out = relocate(genome, new_position);
    const int fixed = repair_forward_connections(out, rng);
    if (repairs != nullptr) *repairs = fixed;
    return out;
}

Genotype reorder_original(const Genotype& genome, Rng& rng) {
    const ActiveSet active = decode_active(genome);
    if (active.count == 0) return genome;

    const int inputs = genome.params.num_inputs;
    const std::size_t count = genome.nodes.size();
    // Dependency set D as CSR: dependents of each node, one entry per edge.
    std::vector<int> pending(count, 0);
    std::vector<std::size_t> offsets(count + 1, 0);
    for (const NodeGene& node : genome.nodes) {
        for (int c : node.connections) {
            if (c >= inputs) ++offsets[static_cast<std::size_t>(c - inputs) + 1];
        }
    }
    for (std::size_t k = 0; k < count; ++k) offsets[k + 1] += offsets[k];
    std::vector<int> dependents(offsets[count]);
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t k = 0; k < count; ++k) {
        for (int c : genome.nodes[k].connections) {
            if (c >= inputs) {
                dependents[fill[static_cast<std::size_t>(c - inputs)]++] = static_cast<int>(k);
                ++pending[k];
            }
        }
    }

    // Addable set Q: nodes whose providers are all placed.
    std::vector<int> addable;
    for (std::size_t k = 0; k < count; ++k) {
        if (pending[k] == 0) addable.push_back(static_cast<int>(k));
    }
    std::vector<int> new_position = identity_positions(genome);
    int next_free = inputs;
    while (!addable.empty()) {
        const auto pick = static_cast<std::size_t>(
            uniform_below(rng, static_cast<std::int64_t>(addable.size())));
        const int node = addable[pick];
        addable[pick] = addable.back();
        addable.pop_back();
        new_position[static_cast<std::size_t>(inputs + node)] = next_free++;
        for (std::size_t e = offsets[static_cast<std::size_t>(node)];
             e < offsets[static_cast<std::size_t>(node) + 1]; ++e) {
            const auto dep = static_cast<std::size_t>(dependents[e]);
            if (--pending[dep] == 0) addable.push_back(static_cast<int>(dep));
        }
    }
    if (next_free != inputs + static_cast<int>(count)) {
        throw InvariantViolation("original reorder left nodes unplaced; genome is not feed-forward");
    }
    return relocate(genome, new_position);
}

Genotype reorder_equidistant(const Genotype& genome, Rng& rng) {
    return place_with(genome, rng, equidistant_positions);
}

Genotype reorder_uniform(const Genotype& genome, Rng& rng) {
    return place_with(genome, rng, uniform_positions);
}

Genotype reorder_negbias(const Genotype& genome, Rng& rng) {
    return place_with(genome, rng, negbias_positions);
}

Genotype reorder_leftskew(const Genotype& genome, Rng& rng) {
    return place_with(genome, rng, leftskew_positions);
}

Genotype reorder(const Genotype& genome, ReorderKind kind, Rng& rng) {
    switch (kind) {
        case ReorderKind::none: return genome;
        case ReorderKind::original: return reorder_original(genome, rng);
        case ReorderKind::equidistant: return reorder_equidistant(genome, rng);
        case ReorderKind::uniform: return reorder_uniform(genome, rng);
        case ReorderKind::negbias: return reorder_negbias(genome, rng);
        case ReorderKind::leftskew: return reorder_leftskew(genome, rng);
    }
    return genome;
}

Genotype maybe_reorder(const Genotype& genome, const ReorderStrategy& strategy, Rng& rng) {
    if (strategy.kind == ReorderKind::none) return genome;
    if (strategy.p_reorder < 1.0 && !(unit_uniform(rng) < strategy.p_reorder)) return genome;
    return reorder(genome, strategy.kind, rng);
}

}  // namespace cgp
