#include "cgp/genome.hpp"

#include <string>

#include "cgp/errors.hpp"

namespace cgp {

void GraphParams::check() const {
    if (num_inputs < 1) throw ConfigError("num_inputs must be >= 1");
    if (num_outputs < 1) throw ConfigError("num_outputs must be >= 1");
    if (num_computational < 1) throw ConfigError("num_computational must be >= 1");
    if (arity != kArity) {
        throw ConfigError("arity must be " + std::to_string(kArity) + ", got " +
                          std::to_string(arity));
    }
}

std::vector<int> ActiveSet::indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::size_t k = 0; k < active.size(); ++k) {
        if (active[k]) out.push_back(static_cast<int>(k));
    }
    return out;
}

Genotype random_genome(const GraphParams& params, Rng& rng) {
    params.check();
    Genotype g;
    g.params = params;
    g.nodes.resize(static_cast<std::size_t>(params.num_computational));
    const int functions = function_count(params.function_set);
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        const int position = g.position_of(k);
        NodeGene& node = g.nodes[k];
        node.function_id = static_cast<int>(uniform_below(rng, functions));
        for (int& c : node.connections) c = static_cast<int>(uniform_below(rng, position));
    }
    g.outputs.resize(static_cast<std::size_t>(params.num_outputs));
    for (int& o : g.outputs) o = static_cast<int>(uniform_below(rng, params.output_domain()));
    return g;
}

ActiveSet decode_active(const Genotype& genome) {
    const int inputs = genome.params.num_inputs;
    ActiveSet set;
    set.active.assign(genome.nodes.size(), 0);
    for (int o : genome.outputs) {
        if (o >= inputs) set.active[static_cast<std::size_t>(o - inputs)] = 1;
    }
    for (std::size_t k = genome.nodes.size(); k-- > 0;) {
        if (!set.active[k]) continue;
        ++set.count;
        const NodeGene& node = genome.nodes[k];
        const int position = genome.position_of(k);
        const int used = function_arity(genome.params.function_set, node.function_id);
        for (int c = 0; c < used; ++c) {
            const int target = node.connections[static_cast<std::size_t>(c)];
            if (target >= position) {
                throw InvariantViolation("active node at position " + std::to_string(position) +
                                         " reads forward position " + std::to_string(target));
            }
            if (target >= inputs) set.active[static_cast<std::size_t>(target - inputs)] = 1;
        }
    }
    return set;
}

std::vector<Violation> validate(const Genotype& genome) {
    std::vector<Violation> report;
    const GraphParams& p = genome.params;
    try {
        p.check();
    } catch (const ConfigError& e) {
        report.push_back({-1, e.what()});
        return report;
    }
    if (genome.nodes.size() != static_cast<std::size_t>(p.num_computational)) {
        report.push_back({-1, "expected " + std::to_string(p.num_computational) +
                                  " computational nodes, found " +
                                  std::to_string(genome.nodes.size())});
    }
    if (genome.outputs.size() != static_cast<std::size_t>(p.num_outputs)) {
        report.push_back({-1, "expected " + std::to_string(p.num_outputs) +
                                  " output genes, found " + std::to_string(genome.outputs.size())});
    }
    const int functions = function_count(p.function_set);
    for (std::size_t k = 0; k < genome.nodes.size(); ++k) {
        const int position = genome.position_of(k);
        const NodeGene& node = genome.nodes[k];
        if (node.function_id < 0 || node.function_id >= functions) {
            report.push_back({position, "function gene " + std::to_string(node.function_id) +
                                            " outside function set"});
        }
        for (int c : node.connections) {
            if (c < 0 || c >= position) {
                report.push_back({position, "connection to " + std::to_string(c) +
                                                " is not feed-forward"});
            }
        }
    }
    const int output_base = p.num_inputs + static_cast<int>(genome.nodes.size());
    for (std::size_t i = 0; i < genome.outputs.size(); ++i) {
        const int o = genome.outputs[i];
        if (o < 0 || o >= output_base) {
            report.push_back({output_base + static_cast<int>(i),
                              "output connection to " + std::to_string(o) +
                                  " is not an input or computational node"});
        }
    }
    return report;
}

namespace {

template <typename Value, typename Apply>
std::vector<Value> forward_pass(const Genotype& genome, std::span<const Value> inputs,
                                const std::vector<std::uint8_t>* active, Apply apply) {
    const auto& p = genome.params;
    std::vector<Value> values(static_cast<std::size_t>(p.output_domain()), Value{});
    for (int i = 0; i < p.num_inputs; ++i) values[static_cast<std::size_t>(i)] = inputs[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < genome.nodes.size(); ++k) {
        if (active != nullptr && !(*active)[k]) continue;
        const NodeGene& node = genome.nodes[k];
        std::array<Value, kArity> args{};
        const int used = function_arity(p.function_set, node.function_id);
        for (int c = 0; c < used; ++c) {
            args[static_cast<std::size_t>(c)] =
                values[static_cast<std::size_t>(node.connections[static_cast<std::size_t>(c)])];
        }
        values[static_cast<std::size_t>(genome.position_of(k))] = apply(node.function_id, args);
    }
    std::vector<Value> out;
    out.reserve(genome.outputs.size());
    for (int o : genome.outputs) out.push_back(values[static_cast<std::size_t>(o)]);
    return out;
}

std::uint8_t boolean_node(int f, const std::array<std::uint8_t, kArity>& args) {
    return apply_boolean(f, args);
}
double regression_node(int f, const std::array<double, kArity>& args) {
    return apply_regression(f, args);
}

}  // namespace

std::vector<std::uint8_t> evaluate(const Genotype& genome, std::span<const std::uint8_t> inputs) {
    const ActiveSet active = decode_active(genome);
    return forward_pass(genome, inputs, &active.active, boolean_node);
}

std::vector<double> evaluate(const Genotype& genome, std::span<const double> inputs) {
    const ActiveSet active = decode_active(genome);
    return forward_pass(genome, inputs, &active.active, regression_node);
}

std::vector<std::uint8_t> evaluate_all_nodes(const Genotype& genome,
                                             std::span<const std::uint8_t> inputs) {
    return forward_pass(genome, inputs, nullptr, boolean_node);
}

std::vector<double> evaluate_all_nodes(const Genotype& genome, std::span<const double> inputs) {
    return forward_pass(genome, inputs, nullptr, regression_node);
}

}  // namespace cgp
