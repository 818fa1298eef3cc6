#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "cgp/errors.hpp"
#include "cgp/reorder.hpp"
#include "support.hpp"

using namespace cgp;
using cgp::testing::chain_genome;
using cgp::testing::two_input_genome;

namespace {

const ReorderKind kOperators[] = {ReorderKind::original, ReorderKind::equidistant,
                                  ReorderKind::uniform, ReorderKind::negbias,
                                  ReorderKind::leftskew};

// Value of every node over every input row, as one bit string per node.
std::vector<std::vector<std::uint8_t>> node_signatures(const Genotype& g) {
    const int inputs = g.params.num_inputs;
    const std::size_t rows = std::size_t{1} << inputs;
    std::vector<std::vector<std::uint8_t>> sig(g.nodes.size(), std::vector<std::uint8_t>(rows));
    std::vector<std::uint8_t> value(static_cast<std::size_t>(g.params.output_domain()));
    for (std::size_t r = 0; r < rows; ++r) {
        for (int j = 0; j < inputs; ++j) value[j] = (r >> j) & 1;
        for (std::size_t k = 0; k < g.nodes.size(); ++k) {
            const auto& n = g.nodes[k];
            const std::uint8_t a = value[n.connections[0]], b = value[n.connections[1]];
            std::uint8_t v = 0;
            switch (n.function_id) {
                case fn::kAnd: v = a & b; break;
                case fn::kOr: v = a | b; break;
                case fn::kNand: v = !(a & b); break;
                default: v = !(a | b); break;
            }
            value[g.position_of(k)] = v;
            sig[k][r] = v;
        }
    }
    return sig;
}

std::vector<std::vector<std::uint8_t>> active_sequence(const Genotype& g) {
    const auto sig = node_signatures(g);
    const ActiveSet a = decode_active(g);
    std::vector<std::vector<std::uint8_t>> out;
    for (int k : a.indices()) out.push_back(sig[k]);
    return out;
}

std::vector<int> active_positions(const Genotype& g) {
    std::vector<int> out;
    for (int k : decode_active(g).indices()) out.push_back(g.position_of(k));
    return out;
}

std::vector<std::vector<std::uint8_t>> truth_table(const Genotype& g) {
    const auto rows = cgp::testing::all_input_rows(g.params.num_inputs);
    std::vector<std::vector<std::uint8_t>> out;
    const auto w = static_cast<std::size_t>(g.params.num_inputs);
    for (std::size_t r = 0; r < (std::size_t{1} << w); ++r) {
        out.push_back(evaluate(g, std::span<const std::uint8_t>(rows.data() + r * w, w)));
    }
    return out;
}

// Genome with exactly one active node at node index `k`, reading inputs only.
Genotype single_active(int inputs, int n, int k, Rng& rng) {
    Genotype g = random_genome(GraphParams{inputs, 1, n, kArity, FunctionSetId::boolean}, rng);
    g.nodes[static_cast<std::size_t>(k)].connections = {0, inputs - 1};
    g.outputs = {inputs + k};
    return g;
}

}  // namespace

TEST_CASE("lin_space examples") {
    CHECK(lin_space(3, 10, 2) == std::vector<int>{6, 10});
    CHECK(lin_space(1, 4, 4) == std::vector<int>{1, 2, 3, 4});
    for (int s = 0; s < 6; ++s) {
        for (int e = s; e < 12; ++e) CHECK(lin_space(s, e, 1) == std::vector<int>{e});
    }
    CHECK_THROWS_AS(lin_space(3, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(lin_space(3, 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(lin_space(5, 4, 1), std::invalid_argument);
}

TEST_CASE("beta inverse cdf") {
    CHECK(beta61_from_uniform(1.0) == 1.0);
    CHECK(beta61_from_uniform(0.0) == 0.0);
    CHECK(beta61_from_uniform(std::ldexp(1.0, -6)) == doctest::Approx(0.5).epsilon(1e-15));
    Rng rng(8);
    for (int i = 0; i < 1000; ++i) {
        const double x = sample_beta61(rng);
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
    }
}

TEST_CASE("continuous samples to distinct positions") {
    CHECK(positions_from_unit_samples({0.0, 0.5, 0.99}, 10, 19) == std::vector<int>{10, 15, 19});
    CHECK(positions_from_unit_samples({0.5, 0.5, 0.5}, 10, 19) == std::vector<int>{15, 16, 17});
    CHECK(positions_from_unit_samples({0.99, 0.99, 1.0}, 10, 19) == std::vector<int>{17, 18, 19});
    CHECK(positions_from_unit_samples({0.9, 0.1}, 0, 9) == std::vector<int>{1, 9});
    CHECK(positions_from_unit_samples({0.3, 0.3, 0.3, 0.3}, 0, 3) == std::vector<int>{0, 1, 2, 3});
    Rng rng(12);
    for (int rep = 0; rep < 2000; ++rep) {
        const int s = static_cast<int>(uniform_below(rng, 5));
        const int e = s + static_cast<int>(uniform_below(rng, 30));
        const int n = 1 + static_cast<int>(uniform_below(rng, e - s + 1));
        std::vector<double> u(static_cast<std::size_t>(n));
        for (double& x : u) x = unit_uniform(rng);
        const auto pos = positions_from_unit_samples(u, s, e);
        REQUIRE(pos.size() == u.size());
        CHECK(std::is_sorted(pos.begin(), pos.end()));
        CHECK(std::adjacent_find(pos.begin(), pos.end()) == pos.end());
        CHECK(pos.front() >= s);
        CHECK(pos.back() <= e);
    }
}

TEST_CASE("placement sets partition the range") {
    const PlacementSets p = make_placement({3, 5}, 2, 7);
    CHECK(p.inactive_positions == std::vector<int>{2, 4, 6, 7});
    CHECK(p.start == 2);
    CHECK(p.end == 7);
}

TEST_CASE("strategy construction") {
    CHECK(ReorderStrategy::make(ReorderKind::equidistant, 0.3).p_reorder == 1.0);
    CHECK(ReorderStrategy::make(ReorderKind::negbias, 0.3).p_reorder == 0.3);
    CHECK_THROWS_AS(ReorderStrategy::make(ReorderKind::leftskew, 1.5), ConfigError);
    CHECK_THROWS_AS(parse_reorder_kind("shuffle"), ConfigError);
    for (auto k : kOperators) CHECK(parse_reorder_kind(to_string(k)) == k);
}

TEST_CASE("equidistant examples") {
    Rng rng(1);
    // Actives SUB, ADD land on lin_space(2,4,2) = {3,4}; PDIV at 2.
    const Genotype g = reorder_equidistant(two_input_genome(), rng);
    CHECK(g == two_input_genome());
    CHECK(active_positions(g) == std::vector<int>{3, 4});

    Genotype swapped = two_input_genome();
    swapped.nodes = {NodeGene{fn::kSub, {0, 1}}, NodeGene{fn::kPdiv, {0, 1}}, NodeGene{fn::kAdd, {2, 2}}};
    const Genotype r = reorder_equidistant(swapped, rng);
    CHECK(active_positions(r) == std::vector<int>{3, 4});
    CHECK(r.nodes[0].function_id == fn::kPdiv);
    const double in[2] = {5.0, 3.0};
    CHECK(evaluate(r, in)[0] == 4.0);

    for (int rep = 0; rep < 20; ++rep) {
        const Genotype one = single_active(3, 30, static_cast<int>(uniform_below(rng, 30)), rng);
        CHECK(active_positions(reorder_equidistant(one, rng)) == std::vector<int>{32});
    }
    const Genotype chain = chain_genome(2, 9);
    CHECK(reorder_equidistant(chain, rng) == chain);
}

TEST_CASE("negbias examples") {
    Rng rng(2);
    // N=5, s=1, e=5 with two active nodes -> {4, 5}.
    Genotype g = random_genome(GraphParams{1, 1, 5, kArity, FunctionSetId::boolean}, rng);
    g.nodes[1] = NodeGene{fn::kAnd, {0, 0}};
    g.nodes[2] = NodeGene{fn::kOr, {2, 0}};
    g.outputs = {3};
    REQUIRE(decode_active(g).count == 2);
    CHECK(active_positions(reorder_negbias(g, rng)) == std::vector<int>{4, 5});

    const Genotype chain = chain_genome(2, 9);
    CHECK(reorder_negbias(chain, rng) == chain);
}

TEST_CASE("no active nodes leaves every operator an identity") {
    Rng rng(3);
    Genotype g = random_genome(GraphParams{3, 2, 40, kArity, FunctionSetId::boolean}, rng);
    g.outputs = {0, 2};
    for (auto k : kOperators) {
        if (k == ReorderKind::original) continue;
        CHECK(reorder(g, k, rng) == g);
    }
}

TEST_CASE("fully active genome is a fixpoint of placement operators") {
    Rng rng(4);
    const Genotype chain = chain_genome(3, 25);
    for (auto k : kOperators) CHECK(reorder(chain, k, rng) == chain);
}

TEST_CASE("original reorder keeps dependencies and permutes independents uniformly") {
    Rng rng(5);
    for (int rep = 0; rep < 50; ++rep) {
        const Genotype g = reorder_original(two_input_genome(), rng);
        const auto pos = active_positions(g);
        REQUIRE(pos.size() == 2);
        CHECK(g.node_at(pos[0]).function_id == fn::kSub);
        CHECK(g.node_at(pos[1]).function_id == fn::kAdd);
        for (double x : {-1.5, 0.0, 2.0}) {
            const double in[2] = {x, 0.25};
            CHECK(evaluate(g, in)[0] == 2 * (x - 0.25));
        }
    }
    // Three nodes reading inputs only: all 3! orders, roughly 1/6 each.
    Genotype flat;
    flat.params = GraphParams{2, 1, 3, kArity, FunctionSetId::boolean};
    flat.nodes = {NodeGene{0, {0, 1}}, NodeGene{1, {0, 1}}, NodeGene{2, {0, 1}}};
    flat.outputs = {2};
    std::map<std::vector<int>, int> counts;
    const int trials = 6000;
    for (int t = 0; t < trials; ++t) {
        const Genotype r = reorder_original(flat, rng);
        std::vector<int> order;
        for (const auto& n : r.nodes) order.push_back(n.function_id);
        ++counts[order];
    }
    CHECK(counts.size() == 6);
    for (const auto& [order, c] : counts) CHECK(std::abs(c - trials / 6) < 150);

    const Genotype chain = chain_genome(2, 12);
    CHECK(reorder_original(chain, rng) == chain);
}

TEST_CASE("uniform placement of a single active node") {
    Rng rng(6);
    const int inputs = 3, n = 100;
    const Genotype g = single_active(inputs, n, 40, rng);
    std::vector<int> hits(n, 0);
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        const auto pos = active_positions(reorder_uniform(g, rng));
        REQUIRE(pos.size() == 1);
        ++hits[static_cast<std::size_t>(pos[0] - inputs)];
    }
    double chi2 = 0.0;
    const double expected = static_cast<double>(trials) / n;
    for (int h : hits) chi2 += (h - expected) * (h - expected) / expected;
    // 99th percentile of chi-square with 99 degrees of freedom.
    CHECK(chi2 < 134.642);
}

TEST_CASE("leftskew pushes a lone active node right") {
    Rng rng(7);
    const int inputs = 2, n = 100;
    const Genotype g = single_active(inputs, n, 10, rng);
    double sum = 0.0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) sum += active_positions(reorder_leftskew(g, rng))[0] - inputs;
    // floor(100 * X) with X ~ Beta(6,1): mean 100*6/7 - about 0.5.
    CHECK(sum / trials == doctest::Approx(100.0 * 6.0 / 7.0 - 0.5).epsilon(0.01));
}

TEST_CASE("repair of forward connections") {
    Rng rng(8);
    Genotype clean = chain_genome(2, 6);
    const Genotype before = clean;
    CHECK(repair_forward_connections(clean, rng) == 0);
    CHECK(clean == before);

    for (int rep = 0; rep < 50; ++rep) {
        Genotype g = chain_genome(2, 6);
        g.outputs = {2};
        g.nodes[1].connections[1] = 5;  // inactive node at position 3 reads 5
        CHECK(repair_forward_connections(g, rng) == 1);
        CHECK(g.nodes[1].connections[1] < 3);
        CHECK(validate(g).empty());
    }

    Genotype bad = chain_genome(2, 6);
    bad.nodes[1].connections[0] = 5;
    CHECK_THROWS_AS(repair_forward_connections(bad, rng), InvariantViolation);
}

TEST_CASE("negbias on a large multiply-shaped genome needs repairs") {
    Rng rng(9);
    const GraphParams p{6, 6, 1000, kArity, FunctionSetId::boolean};
    int with_repairs = 0;
    for (int rep = 0; rep < 10; ++rep) {
        const Genotype g = cgp::testing::deep_random_genome(p, rng);
        const ActiveSet active = decode_active(g);
        std::vector<int> positions;
        const int n = active.count;
        for (int i = 0; i < n; ++i) positions.push_back(p.last_computational() - n + 1 + i);
        int repairs = 0;
        apply_placement(g, active, make_placement(positions, p.first_computational(),
                                                  p.last_computational()),
                        rng, &repairs);
        if (repairs > 0) ++with_repairs;
    }
    CHECK(with_repairs >= 8);
}

TEST_CASE("maybe_reorder gating") {
    Rng rng(10);
    const Genotype g = cgp::testing::deep_random_genome(
        GraphParams{3, 1, 60, kArity, FunctionSetId::boolean}, rng);
    for (auto k : kOperators) {
        ReorderStrategy s{k, 0.0};
        CHECK(maybe_reorder(g, s, rng) == g);
    }
    CHECK(maybe_reorder(g, ReorderStrategy::make(ReorderKind::none), rng) == g);
    const auto expect = lin_space(3, 62, decode_active(g).count);
    for (int rep = 0; rep < 20; ++rep) {
        const Genotype r = maybe_reorder(g, ReorderStrategy::make(ReorderKind::equidistant), rng);
        CHECK(active_positions(r) == expect);
    }
    int applied = 0;
    for (int rep = 0; rep < 2000; ++rep) {
        if (!(maybe_reorder(g, ReorderStrategy::make(ReorderKind::negbias, 0.3), rng) == g)) ++applied;
    }
    CHECK(applied > 500);
    CHECK(applied < 700);
}

TEST_CASE("reorder operators preserve the phenotype and structure") {
    Rng rng(11);
    const GraphParams shapes[] = {{3, 1, 50, kArity, FunctionSetId::boolean},
                                  {6, 6, 80, kArity, FunctionSetId::boolean},
                                  {4, 16, 40, kArity, FunctionSetId::boolean},
                                  {2, 1, 5, kArity, FunctionSetId::boolean}};
    for (const auto& p : shapes) {
        for (int rep = 0; rep < 60; ++rep) {
            const Genotype g = cgp::testing::deep_random_genome(p, rng);
            const auto table = truth_table(g);
            const auto seq = active_sequence(g);
            const int count = decode_active(g).count;
            for (auto k : kOperators) {
                const Genotype r = reorder(g, k, rng);
                CHECK(validate(r).empty());
                CHECK(truth_table(r) == table);
                CHECK(decode_active(r).count == count);
                if (k != ReorderKind::original) CHECK(active_sequence(r) == seq);
                const auto pos = active_positions(r);
                if (k == ReorderKind::equidistant && count > 0) {
                    CHECK(pos == lin_space(p.first_computational(), p.last_computational(), count));
                }
                if (k == ReorderKind::negbias) {
                    for (int i = 0; i < count; ++i) {
                        CHECK(pos[i] == p.last_computational() - count + 1 + i);
                    }
                }
            }
        }
    }
}

TEST_CASE("reorder is deterministic under a fixed seed") {
    Rng setup(12);
    const Genotype g = cgp::testing::deep_random_genome(
        GraphParams{6, 6, 100, kArity, FunctionSetId::boolean}, setup);
    for (auto k : kOperators) {
        Rng a(99), b(99);
        CHECK(reorder(g, k, a) == reorder(g, k, b));
    }
}
