#pragma once

#include <cstdint>
#include <vector>

#include "cgp/benchmarks.hpp"
#include "cgp/genome.hpp"
#include "cgp/kernels.hpp"
#include "cgp/rng.hpp"

namespace cgp::testing {

// Two inputs, three nodes: n2 = PDIV(0,1) unused, n3 = SUB(0,1), n4 = ADD(3,3), out -> n4.
inline Genotype two_input_genome() {
    Genotype g;
    g.params = GraphParams{2, 1, 3, kArity, FunctionSetId::regression};
    g.nodes = {NodeGene{fn::kPdiv, {0, 1}}, NodeGene{fn::kSub, {0, 1}}, NodeGene{fn::kAdd, {3, 3}}};
    g.outputs = {4};
    return g;
}

// Node k reads node k-1 (node 0 reads input 0); output reads the last node.
inline Genotype chain_genome(int inputs, int n, FunctionSetId set = FunctionSetId::boolean) {
    Genotype g;
    g.params = GraphParams{inputs, 1, n, kArity, set};
    for (int k = 0; k < n; ++k) {
        const int prev = k == 0 ? 0 : inputs + k - 1;
        g.nodes.push_back(NodeGene{0, {prev, k == 0 ? 0 : prev}});
    }
    g.outputs = {inputs + n - 1};
    return g;
}

// Random genome nudged by a few mutations of its connection genes toward deeper graphs.
inline Genotype deep_random_genome(const GraphParams& params, Rng& rng) {
    Genotype g = random_genome(params, rng);
    for (std::size_t k = 1; k < g.nodes.size(); ++k) {
        if (unit_uniform(rng) < 0.7) {
            const int pos = g.position_of(k);
            g.nodes[k].connections[0] = pos - 1 - static_cast<int>(uniform_below(rng, std::min(pos, 3)));
        }
    }
    return g;
}

// Every input combination of `inputs` bits, row r = bits of r LSB first.
inline std::vector<std::uint8_t> all_input_rows(int inputs) {
    const std::size_t rows = std::size_t{1} << inputs;
    std::vector<std::uint8_t> out(rows * static_cast<std::size_t>(inputs));
    for (std::size_t r = 0; r < rows; ++r) {
        for (int j = 0; j < inputs; ++j) out[r * static_cast<std::size_t>(inputs) + j] = (r >> j) & 1;
    }
    return out;
}

inline PackedTable full_table(int inputs, int outputs) {
    PackedTable t;
    t.num_inputs = inputs;
    t.num_outputs = outputs;
    t.rows = std::size_t{1} << inputs;
    t.blocks = (t.rows + kWordBits - 1) / kWordBits;
    t.inputs = pack_columns(all_input_rows(inputs), t.rows, inputs);
    t.targets.assign(static_cast<std::size_t>(outputs) * t.blocks, 0);
    t.row_mask.assign(t.blocks, ~Word{0});
    if (t.rows % kWordBits) t.row_mask.back() = (Word{1} << (t.rows % kWordBits)) - 1;
    return t;
}

}  // namespace cgp::testing
