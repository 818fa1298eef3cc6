#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cgp/functions.hpp"
#include "cgp/rng.hpp"

namespace cgp {

/// Connection genes per computational node. Unary functions carry a second,
/// ignored gene.
inline constexpr int kArity = 2;

/// Shape of a single-row CGP graph (r = 1, c = num_computational).
struct GraphParams {
    int num_inputs = 1;
    int num_outputs = 1;
    int num_computational = 1;
    int arity = kArity;
    FunctionSetId function_set = FunctionSetId::boolean;

    /// Throws ConfigError on any invariant violation.
    void check() const;

    int first_computational() const { return num_inputs; }
    int last_computational() const { return num_inputs + num_computational - 1; }
    /// Positions an output gene may reference: [0, output_domain()).
    int output_domain() const { return num_inputs + num_computational; }

    bool operator==(const GraphParams&) const = default;
};

struct NodeGene {
    int function_id = 0;
    std::array<int, kArity> connections{};

    bool operator==(const NodeGene&) const = default;
};

/// Global numbering: [0, I) inputs, [I, I+N) computational nodes, then outputs.
/// `nodes[k]` sits at global position I + k.
struct Genotype {
    GraphParams params;
    std::vector<NodeGene> nodes;
    std::vector<int> outputs;

    int position_of(std::size_t node_index) const {
        return params.num_inputs + static_cast<int>(node_index);
    }
    const NodeGene& node_at(int position) const {
        return nodes[static_cast<std::size_t>(position - params.num_inputs)];
    }
    NodeGene& node_at(int position) {
        return nodes[static_cast<std::size_t>(position - params.num_inputs)];
    }

    bool operator==(const Genotype&) const = default;
};

/// Activity of the computational nodes, indexed by node index (not global position).
struct ActiveSet {
    std::vector<std::uint8_t> active;
    int count = 0;

    bool is_active(std::size_t node_index) const { return active[node_index] != 0; }
    /// Ascending node indices of active nodes.
    std::vector<int> indices() const;

    bool operator==(const ActiveSet&) const = default;
};

Genotype random_genome(const GraphParams& params, Rng& rng);

/// Backward reachability from the output genes through the connection genes each
/// function consumes. Throws InvariantViolation if a consumed gene of a reachable
/// node points forward.
ActiveSet decode_active(const Genotype& genome);

struct Violation {
    int position = 0;
    std::string message;
};

/// Every broken Genotype invariant, with the global position of the offending gene.
std::vector<Violation> validate(const Genotype& genome);

// Row-wise evaluation, the semantic reference. Only active nodes are computed.
std::vector<std::uint8_t> evaluate(const Genotype& genome, std::span<const std::uint8_t> inputs);
std::vector<double> evaluate(const Genotype& genome, std::span<const double> inputs);

// Same semantics, computing every node in order.
std::vector<std::uint8_t> evaluate_all_nodes(const Genotype& genome,
                                             std::span<const std::uint8_t> inputs);
std::vector<double> evaluate_all_nodes(const Genotype& genome, std::span<const double> inputs);

}  // namespace cgp
