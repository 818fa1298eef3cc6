#include <doctest.h>

#include "cgp/batch.hpp"
#include "cgp/evolution.hpp"
#include "cgp/reference.hpp"
#include "support.hpp"

using namespace cgp;

namespace {

void check_trace(const RunResult& r, bool maximize) {
    REQUIRE_FALSE(r.trace.points.empty());
    CHECK(r.trace.points.front().iteration == 0);
    CHECK(r.trace.points.back().iteration == r.iterations);
    for (std::size_t i = 1; i < r.trace.points.size(); ++i) {
        const auto& a = r.trace.points[i - 1];
        const auto& b = r.trace.points[i];
        CHECK(a.iteration < b.iteration);
        if (maximize) {
            CHECK(b.best_fitness >= a.best_fitness);
        } else {
            CHECK(b.best_fitness <= a.best_fitness);
        }
    }
    CHECK(r.trace.points.back().best_fitness == r.final_train_fitness);
}

}  // namespace

TEST_CASE("select_parent") {
    const double a[] = {0.5, 0.4, 0.3, 0.2};
    CHECK(select_parent(0.5, a, true) == std::optional<std::size_t>{0});
    const double b[] = {0.1, 0.1, 0.1, 0.1};
    CHECK_FALSE(select_parent(0.9, b, true).has_value());
    const double c[] = {0.3, 0.3, 0.1, 0.5};
    CHECK(select_parent(0.3, c, false) == std::optional<std::size_t>{2});
    const double d[] = {0.2, 0.7, 0.7, 0.1};
    CHECK(select_parent(0.5, d, true) == std::optional<std::size_t>{1});
    const double e[] = {0.6, 0.6, 0.9, 0.9};
    CHECK_FALSE(select_parent(0.5, e, false).has_value());
}

TEST_CASE("ES defaults per benchmark kind") {
    const Benchmark parity = build_benchmark("parity3", 0);
    const ESConfig bc = ESConfig::defaults_for(parity);
    CHECK_FALSE(bc.max_iterations.has_value());
    CHECK(bc.convergence_threshold == 1.0);
    CHECK(maximizes(parity));
    const Benchmark k6 = build_benchmark("keijzer6", 0);
    const ESConfig rc = ESConfig::defaults_for(k6);
    CHECK(rc.max_iterations == std::optional<std::int64_t>{500000});
    CHECK(rc.convergence_threshold == 0.01);
    CHECK_FALSE(maximizes(k6));
}

TEST_CASE("parity3 runs converge with monotone traces") {
    const Benchmark bench = build_benchmark("parity3", 0);
    for (auto kind : {ReorderKind::none, ReorderKind::original, ReorderKind::equidistant,
                      ReorderKind::uniform, ReorderKind::negbias, ReorderKind::leftskew}) {
        ESConfig cfg = ESConfig::defaults_for(bench);
        cfg.num_computational = 60;
        cfg.strategy = ReorderStrategy::make(kind, 0.5);
        cfg.max_iterations = 200000;
        cfg.verify_reorder = true;
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            cfg.seed = seed;
            const RunResult r = run_es(cfg, bench, std::uint64_t{1});
            CHECK(r.converged);
            CHECK(r.final_train_fitness == 1.0);
            CHECK(r.iterations >= 1);
            CHECK(r.evaluations == 4 * r.iterations);
            CHECK(r.active_count == decode_active(r.final_genome).count);
            CHECK(static_cast<int>(r.active_bitmap.size()) == 60);
            CHECK(boolean_fitness(r.final_genome, std::get<BooleanBenchmark>(bench)) == 1.0);
            check_trace(r, true);
        }
    }
}

TEST_CASE("constant target is reached quickly") {
    // koza3 restricted to a dataset whose target is x - x = 0 everywhere.
    RegressionBenchmark rb;
    rb.name = "zero";
    rb.train = Dataset::from_rows(1, {-1.0, 0.5, 2.0}, {0.0, 0.0, 0.0});
    const Benchmark bench{rb};
    ESConfig cfg = ESConfig::defaults_for(bench);
    cfg.num_computational = 10;
    cfg.max_iterations = 50000;
    const RunResult r = run_es(cfg, bench, std::uint64_t{3});
    CHECK(r.converged);
    CHECK(r.final_train_fitness < 0.01);
    CHECK(r.evaluations == 4 * r.iterations);
    check_trace(r, false);
}

TEST_CASE("budget exhaustion reports a non-converged run") {
    const Benchmark bench = build_benchmark("multiply3", 0);
    ESConfig cfg = ESConfig::defaults_for(bench);
    cfg.num_computational = 30;
    cfg.max_iterations = 250;
    const RunResult r = run_es(cfg, bench, std::uint64_t{0});
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 250);
    CHECK(r.evaluations == 1000);
    check_trace(r, true);
    // Sampled every 100 iterations plus improvements and the end.
    bool has100 = false, has200 = false;
    for (const auto& p : r.trace.points) {
        has100 = has100 || p.iteration == 100;
        has200 = has200 || p.iteration == 200;
    }
    CHECK(has100);
    CHECK(has200);

    cfg.full_trace = true;
    const RunResult full = run_es(cfg, bench, std::uint64_t{0});
    CHECK(full.trace.points.size() == 251);
    CHECK(full.final_genome == r.final_genome);
}

TEST_CASE("regression run records test fitness") {
    const Benchmark bench = build_benchmark("keijzer6", 0);
    ESConfig cfg = ESConfig::defaults_for(bench);
    cfg.num_computational = 20;
    cfg.max_iterations = 300;
    const RunResult r = run_es(cfg, bench, std::uint64_t{0});
    REQUIRE(r.final_test_fitness.has_value());
    CHECK(*r.final_test_fitness ==
          mae_fitness(r.final_genome, *std::get<RegressionBenchmark>(bench).test));
    CHECK(r.final_train_fitness == mae_fitness(r.final_genome, std::get<RegressionBenchmark>(bench).train));
    check_trace(r, false);
}

TEST_CASE("identical config and seed give identical results") {
    const Benchmark bench = build_benchmark("koza3", 2);
    ESConfig cfg = ESConfig::defaults_for(bench);
    cfg.num_computational = 40;
    cfg.max_iterations = 500;
    cfg.strategy = ReorderStrategy::make(ReorderKind::leftskew, 0.7);
    cfg.seed = 5;
    CHECK(run_es(cfg, bench, std::uint64_t{8}) == run_es(cfg, bench, std::uint64_t{8}));
    Rng a = derive_stream(8, 5), b = derive_stream(8, 6);
    CHECK(a() != b());
}

TEST_CASE("OpenMP batch equals the serial batch") {
    const std::uint64_t seeds[] = {0, 1, 2, 3, 4, 5, 6, 7};
    {
        const Benchmark bench = build_benchmark("parity3", 0);
        ESConfig cfg = ESConfig::defaults_for(bench);
        cfg.num_computational = 50;
        cfg.max_iterations = 100000;
        cfg.strategy = ReorderStrategy::make(ReorderKind::negbias, 0.5);
        for (int workers : {1, 2, 4}) {
            BatchOptions opts{workers, 77};
            const auto par = run_batch(cfg, bench, seeds, opts);
            const auto ser = reference::run_batch(cfg, bench, seeds, opts);
            CHECK(par == ser);
            for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i].seed == seeds[i]);
        }
    }
    {
        const Benchmark bench = build_benchmark("nguyen7", 1);
        ESConfig cfg = ESConfig::defaults_for(bench);
        cfg.num_computational = 30;
        cfg.max_iterations = 300;
        cfg.strategy = ReorderStrategy::make(ReorderKind::uniform);
        BatchOptions opts{3, 5};
        CHECK(run_batch(cfg, bench, seeds, opts) == reference::run_batch(cfg, bench, seeds, opts));
    }
    CHECK(resolve_workers(2) == 2);
    CHECK(resolve_workers(0) >= 1);
}
