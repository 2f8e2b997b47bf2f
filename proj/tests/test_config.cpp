#include "immig/config.hpp"
#include "immig/errors.hpp"

#include <doctest.h>

using namespace immig;

TEST_CASE("sectioned config parsing") {
    const auto cfg = Config::parse(R"(
# comment
[model]
kind = gi_g_inf
xi = exponential(1)
eta = exponential(0.5)

[experiment]
N = 100
u_list = -1, 0, 2
functional_grid = 0:1:0.25
predicates = always; lifetime>1
)");
    CHECK(cfg.get_count("experiment", "n", 1) == 100);
    CHECK(cfg.get_list("experiment", "u_list", {}) == std::vector<double>{-1, 0, 2});
    CHECK(cfg.get_list("experiment", "functional_grid", {}) == std::vector<double>{0, 0.25, 0.5, 0.75, 1.0});
    CHECK(cfg.get_items("experiment", "predicates", {}) == std::vector<std::string>{"always", "lifetime>1"});
    CHECK_THROWS_WITH_AS(cfg.expect_all_used(), doctest::Contains("model."), ConfigError);
}

TEST_CASE("malformed configs") {
    CHECK_THROWS_WITH_AS(Config::parse("[oops]\na = 1\n"), doctest::Contains("unknown section"), ConfigError);
    CHECK_THROWS_AS(Config::parse("a = 1\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("[run]\nseed\n"), ConfigError);
    CHECK_THROWS_WITH_AS(Config::parse("[run]\nseed = 1\nseed = 2\n"), doctest::Contains("run.seed"), ConfigError);
    const auto cfg = Config::parse("[experiment]\nn = -5\nc = abc\n");
    CHECK_THROWS_WITH_AS(cfg.get_count("experiment", "n", 1), doctest::Contains("experiment.n"), ConfigError);
    CHECK_THROWS_WITH_AS(cfg.get_double("experiment", "c", 1), doctest::Contains("experiment.c"), ConfigError);
}

TEST_CASE("overrides") {
    auto cfg = Config::parse("[run]\nseed = 1\n");
    cfg.set("run.seed=9");
    cfg.set("experiment.n = 20");
    CHECK(cfg.get_u64("run", "seed", 0) == 9);
    CHECK(cfg.get_count("experiment", "n", 0) == 20);
    CHECK_THROWS_AS(cfg.set("seed=3"), ConfigError);
    CHECK_THROWS_AS(cfg.set("bogus.key=3"), ConfigError);
}

TEST_CASE("distribution literals") {
    CHECK(parse_distribution("exponential(2)", "k").mean() == doctest::Approx(0.5));
    CHECK(parse_distribution("gamma(2, 1)", "k").mean() == doctest::Approx(2.0));
    CHECK(parse_distribution("uniform(3)", "k").mean() == doctest::Approx(1.5));
    CHECK(parse_distribution("deterministic(1.5)", "k").atoms() == std::vector<ExactValue>{ExactValue::parse("1.5")});
    CHECK(parse_distribution("discrete(1:0.5, 3:0.5)", "k").mean() == doctest::Approx(2.0));
    CHECK(parse_distribution("pareto(0.8, 1)", "k").mean() == infinity);
    CHECK(parse_distribution("lognormal(0, 0.25)", "k").mean() == doctest::Approx(std::exp(0.03125)));
    CHECK_THROWS_WITH_AS(parse_distribution("weibull(1)", "model.xi"), doctest::Contains("model.xi"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_distribution("gamma(1)", "model.eta"), doctest::Contains("model.eta"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_distribution("exponential(-1)", "model.xi"), doctest::Contains("model.xi"), ConfigError);
}

TEST_CASE("model construction from config") {
    SUBCASE("product dependence") {
        const auto cfg = Config::parse("[model]\nkind = gi_g_inf\nxi = exponential(1)\ndependence = eta=xi*W\nw = lognormal(0, 0.25)\n");
        const auto m = build_model(cfg);
        CHECK(m.mu() == doctest::Approx(1.0));
        CHECK_NOTHROW(cfg.expect_all_used());
    }
    SUBCASE("perpetuity needs a rate") {
        const auto cfg = Config::parse("[model]\nkind = perpetuity\nxi = exponential(1)\neta = deterministic(1)\n");
        CHECK_THROWS_WITH_AS(build_model(cfg), doctest::Contains("model.rate"), ConfigError);
    }
    SUBCASE("unused eta is reported") {
        const auto cfg = Config::parse("[model]\nkind = ctrw\nxi = exponential(1)\ndependence = eta=xi\neta = exponential(1)\n");
        build_model(cfg);
        CHECK_THROWS_WITH_AS(cfg.expect_all_used(), doctest::Contains("model.eta"), ConfigError);
    }
    SUBCASE("lattice declaration is validated") {
        const auto ok = Config::parse("[model]\nkind = gi_g_inf\nxi = discrete(1:0.5, 3:0.5)\ndependence = eta=xi\nlattice = 3, 1\n");
        CHECK_NOTHROW(build_model(ok));
        const auto bad = Config::parse("[model]\nkind = gi_g_inf\nxi = discrete(1:0.5, 3:0.5)\ndependence = eta=xi\nlattice = 1, 2\n");
        CHECK_THROWS_WITH_AS(build_model(bad), doctest::Contains("model.lattice"), ConfigError);
    }
    SUBCASE("declared jump sets and symbolic bases") {
        const auto cfg = Config::parse(
            "[model]\nkind = gi_g_inf\nbases = r2=1.4142135623730951\nxi = deterministic(1)\n"
            "eta = deterministic(1*r2)\nD = 0, 1*r2\nD_xi = -1, 1*r2 - 1\n");
        const auto m = build_model(cfg);
        REQUIRE(m.meta().jumps);
        CHECK(m.meta().jumps->atoms.size() == 2);
    }
    SUBCASE("jump sets come in pairs") {
        const auto cfg = Config::parse("[model]\nkind = gi_g_inf\nxi = exponential(1)\ndependence = eta=xi\nD = 0\n");
        CHECK_THROWS_WITH_AS(build_model(cfg), doctest::Contains("model.D"), ConfigError);
    }
    SUBCASE("custom table") {
        const auto cfg = Config::parse(
            "[model]\nkind = gi_g_inf\nxi = exponential(1)\ndependence = custom-table\n"
            "eta_table = 1: deterministic(0.5); inf: exponential(1)\n");
        CHECK_NOTHROW(build_model(cfg));
    }
    SUBCASE("unknown kind") {
        const auto cfg = Config::parse("[model]\nkind = mm1\nxi = exponential(1)\ndependence = eta=xi\n");
        CHECK_THROWS_WITH_AS(build_model(cfg), doctest::Contains("model.kind"), ConfigError);
    }
}
