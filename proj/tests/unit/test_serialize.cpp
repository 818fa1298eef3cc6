#include <doctest.h>

#include <limits>

#include "cgp/errors.hpp"
#include "cgp/serialize.hpp"
#include "support.hpp"

using namespace cgp;

TEST_CASE("flat genome round trip") {
    Rng rng(1);
    const GraphParams shapes[] = {{3, 1, 20, kArity, FunctionSetId::boolean},
                                  {2, 1, 7, kArity, FunctionSetId::regression}};
    for (const auto& p : shapes) {
        for (int rep = 0; rep < 50; ++rep) {
            const Genotype g = random_genome(p, rng);
            CHECK(parse_flat(to_flat(g)) == g);
        }
    }
    const std::string text = to_flat(cgp::testing::two_input_genome());
    CHECK(text.find("3 1 0 1\n") != std::string::npos);
    CHECK(text.find("out_0 4") != std::string::npos);
}

TEST_CASE("malformed flat text names the line") {
    const std::string good = to_flat(cgp::testing::two_input_genome());
    std::string bad = good;
    bad.replace(bad.find("3 1 0 1"), 7, "3 x 0 1");
    try {
        parse_flat(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_flat(""), ConfigError);
}

TEST_CASE("run result json round trip") {
    RunResult r;
    r.seed = 4;
    r.converged = true;
    r.iterations = 12;
    r.evaluations = 48;
    r.final_train_fitness = 0.1 + 0.2;
    r.final_test_fitness = 1.0 / 3.0;
    r.active_bitmap = {0, 1, 1, 0};
    r.active_count = 2;
    r.trace.points = {{0, 0.9}, {12, 0.1 + 0.2}};
    const auto j = run_result_to_json(r);
    CHECK(j["active_bitmap"] == "0110");
    const RunResult back = run_result_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.seed == r.seed);
    CHECK(back.final_train_fitness == r.final_train_fitness);
    CHECK(back.final_test_fitness == r.final_test_fitness);
    CHECK(back.active_bitmap == r.active_bitmap);
    CHECK(back.trace == r.trace);
    CHECK_THROWS_AS(run_result_from_json(nlohmann::json::object()), ConfigError);
}
