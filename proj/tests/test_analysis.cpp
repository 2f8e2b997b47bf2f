#include "immig/analysis.hpp"
#include "immig/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace immig;

namespace {

PairModel mg_inf() {
    return gi_g_inf_model(ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::exponential(0.5)));
}

}  // namespace

TEST_CASE("equilibrium cdf against Simpson quadrature") {
    const auto xi = ScalarDist::gamma(2.0, 1.0);
    for (double x : {0.1, 0.5, 1.0, 3.0, 10.0}) CHECK(equilibrium_cdf(xi, x) == doctest::Approx(oracle::equilibrium_gamma21(x)).epsilon(1e-9));
    // Discrete xi: F_e is piecewise linear.
    const auto d = ScalarDist::discrete(std::vector<double>{1.0, 3.0}, {0.5, 0.5});
    CHECK(equilibrium_cdf(d, 0.5) == doctest::Approx(0.25));
    CHECK(equilibrium_cdf(d, 2.0) == doctest::Approx(0.75));
    CHECK(equilibrium_cdf(d, 3.0) == doctest::Approx(1.0));
}

TEST_CASE("dri diagnostic verdicts") {
    SUBCASE("perpetuity with lognormal amplitude") {
        const auto m = perpetuity_model(1.0, ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::lognormal(0.0, 1.0)));
        const auto r = dri_diagnostic(m, 1.0, 16, 10'000, 1);
        CHECK(r.verdict == DriVerdict::SummableEvidence);
        CHECK(r.exact_sup);
        for (double s : r.s) CHECK((s >= 0.0 && s <= 1.0));
    }
    SUBCASE("Pareto(0.8) service times") {
        const auto m = gi_g_inf_model(ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::pareto(0.8, 1.0)));
        const auto r = dri_diagnostic(m, 1.0, 32, 10'000, 2);
        CHECK(r.verdict == DriVerdict::DivergentEvidence);
        // s_k = P{eta > k} = k^{-0.8} for k >= 1.
        for (std::size_t k : {2u, 8u, 20u}) CHECK(std::abs(r.s[k] - std::pow(double(k), -0.8)) < 4.0 * r.se[k] + 1e-12);
    }
    SUBCASE("bounded lifetimes") {
        const auto m = gi_g_inf_model(ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::uniform(3.0)));
        const auto r = dri_diagnostic(m, 1.0, 16, 2000, 3);
        CHECK(r.verdict == DriVerdict::SummableEvidence);
        CHECK(r.exact_zero_tail);
        for (std::size_t k = 3; k <= 16; ++k) CHECK(r.s[k] == 0.0);
    }
    SUBCASE("CTRW never decays") {
        const auto m = ctrw_model(ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::exponential(1.0)));
        CHECK(dri_diagnostic(m, 1.0, 16, 2000, 4).verdict == DriVerdict::DivergentEvidence);
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(dri_diagnostic(mg_inf(), 1.0, 4, 2000, 1), ArgumentError);
        CHECK_THROWS_AS(dri_diagnostic(mg_inf(), 1.0, 16, 10, 1), ArgumentError);
    }
}

TEST_CASE("clash check hand cases") {
    SUBCASE("perpetuity passes") {
        const auto m = perpetuity_model(std::log(2.0), ScalarDist::deterministic(1.0),
                                        EtaLaw::independent(ScalarDist::deterministic(1.0)));
        const auto r = clash_check(m, ExactValue(10));
        CHECK(r.delta == std::vector<ExactValue>{ExactValue(-1)});
        CHECK(r.intersection.empty());
        CHECK(r.verdict == ClashVerdict::Pass);
    }
    SUBCASE("unit service times with eta = xi fail") {
        const auto m = gi_g_inf_model(ScalarDist::deterministic(1.0), EtaLaw::equals_xi());
        const auto r = clash_check(m, ExactValue(10));
        CHECK(r.zero_in_delta);
        CHECK(r.verdict == ClashVerdict::Fail);
        CHECK(std::find(r.intersection.begin(), r.intersection.end(), ExactValue(0)) != r.intersection.end());
    }
    SUBCASE("continuous xi is vacuous") {
        const auto r = clash_check(mg_inf(), ExactValue(10));
        CHECK(r.verdict == ClashVerdict::Vacuous);
        CHECK(r.semigroup == std::vector<ExactValue>{ExactValue(0)});
    }
    SUBCASE("irrational service time against a unit lattice passes") {
        const std::map<std::string, double> bases{{"sqrt2", std::sqrt(2.0)}};
        const auto m = gi_g_inf_model(ScalarDist::deterministic(1.0),
                                      EtaLaw::independent(ScalarDist::deterministic(ExactValue::parse("1*sqrt2", bases))));
        const auto r = clash_check(m, ExactValue(10));
        CHECK(r.verdict == ClashVerdict::Pass);
    }
    SUBCASE("undeclared jump laws are a configuration error") {
        ModelMeta meta;
        meta.mu = 1.0;
        meta.lattice = {ExactValue(1)};
        const PairModel m(ScalarDist::deterministic(1.0), 0,
                          [](double, std::span<const double>) { return MarkPath::constant(1.0, 1.0); }, meta);
        CHECK_THROWS_AS(clash_check(m, ExactValue(10)), ConfigError);
    }
}

TEST_CASE("clash verdict is stable once T covers the difference set") {
    for (const auto& m : {gi_g_inf_model(ScalarDist::discrete(std::vector<double>{2.0, 3.0}, {0.5, 0.5}),
                                         EtaLaw::independent(ScalarDist::deterministic(7.0))),
                          gi_g_inf_model(ScalarDist::discrete(std::vector<double>{2.0, 4.0}, {0.5, 0.5}),
                                         EtaLaw::independent(ScalarDist::deterministic(5.0)))}) {
        const auto a = clash_check(m, ExactValue(20));
        const auto b = clash_check(m, ExactValue(40));
        CHECK(a.verdict == b.verdict);
        CHECK(a.intersection == b.intersection);
    }
}

TEST_CASE("mean check") {
    SUBCASE("zero marks") {
        const auto m = perpetuity_model(1.0, ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::exponential(1.0)).scaled(ExactValue(0)));
        const auto r = mean_check(m, 50.0, 1000, 1);
        CHECK(r.empirical == 0.0);
        CHECK(r.analytic == 0.0);
    }
    SUBCASE("M/G/inf analytic value") {
        CHECK(mean_check(mg_inf(), 100.0, 2000, 1).analytic == doctest::Approx(2.0));
    }
    SUBCASE("perpetuity analytic value") {
        const auto m = perpetuity_model(1.0, ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::deterministic(1.0)));
        const auto r = mean_check(m, 100.0, 10'000, 2);
        CHECK(r.analytic == doctest::Approx(1.0));
        CHECK(r.agrees);
    }
    SUBCASE("divergent integral is refused") {
        const auto m = ctrw_model(ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::exponential(1.0)));
        CHECK_THROWS_AS(mean_check(m, 10.0, 1000, 1), DiagnosticError);
    }
    SUBCASE("the 1/mu factor is what matches") {
        // mu = 2 separates the normalized and the unnormalized constants.
        const auto m = gi_g_inf_model(ScalarDist::gamma(2.0, 1.0), EtaLaw::independent(ScalarDist::exponential(0.5)));
        const auto r = mean_check(m, 200.0, 10'000, 3);
        CHECK(r.agrees);
        CHECK_FALSE(r.agrees_unnormalized);
    }
}

TEST_CASE("mean check verdict is stable across seeds") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) CHECK(mean_check(mg_inf(), 100.0, 5000, seed * 7919).agrees);
}

TEST_CASE("perpetuity fixed point") {
    SUBCASE("deterministic case") {
        const auto m = perpetuity_model(std::log(2.0), ScalarDist::deterministic(1.0),
                                        EtaLaw::independent(ScalarDist::deterministic(1.0)));
        Rng rng(1);
        CHECK(std::abs(sample_perpetuity_limit(m, rng) - 1.0) <= 1e-12);
        const auto r = perpetuity_fixed_point_test(m, 2000, 1);
        CHECK(std::abs(r.a_inf_min - 1.0) <= 1e-12);
        CHECK(std::abs(r.a_inf_max - 1.0) <= 1e-12);
        CHECK(r.fixed_point.stat == 0.0);
    }
    SUBCASE("zero amplitude") {
        const auto m = perpetuity_model(1.0, ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::deterministic(1.0)).scaled(ExactValue(0)));
        const auto r = perpetuity_fixed_point_test(m, 2000, 1);
        CHECK(r.a_inf_max == 0.0);
        CHECK(r.fixed_point.stat == 0.0);
    }
    SUBCASE("requires a perpetuity model") {
        CHECK_THROWS_AS(perpetuity_fixed_point_test(mg_inf(), 2000, 1), ConfigError);
    }
}

TEST_CASE("trend check") {
    CHECK(nonincreasing_to_floor({0.3, 0.1, 0.05}, 0.04, 1.5));
    CHECK(nonincreasing_to_floor({0.3, 0.05, 0.055}, 0.04, 1.5));
    CHECK_FALSE(nonincreasing_to_floor({0.3, 0.1, 0.2}, 0.04, 1.5));
}

TEST_CASE("convergence experiment: far from stationarity at t = 0") {
    ConvergenceSettings s;
    s.t_list = {0.0, 100.0};
    s.u_list = {0.0};
    s.n = 2000;
    s.floor_pairs = 2;
    s.tail_samples = 20'000;
    s.permutations = 49;
    s.energy_subsample = 300;
    const auto r = convergence_experiment(mg_inf(), s);
    REQUIRE(r.marginals.size() == 1);
    CHECK(r.marginals[0].ks[0].stat > r.marginals[0].ks[1].stat);
    CHECK(r.marginals[0].floor > 0.0);
    CHECK(r.marginals[0].ks[0].tie_aware);

    s.t_list = {5.0, 1.0};
    CHECK_THROWS_AS(convergence_experiment(mg_inf(), s), ArgumentError);
    s.t_list = {1.0};
    s.u_list = {30.0};
    CHECK_THROWS_AS(convergence_experiment(mg_inf(), s), ArgumentError);
    s.u_list = {0.0};
    s.n = 10;
    CHECK_THROWS_AS(convergence_experiment(mg_inf(), s), ArgumentError);
}

TEST_CASE("truncation failure is a numerical error") {
    const auto m = perpetuity_model(0.05, ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::deterministic(1.0)));
    ConvergenceSettings s;
    s.t_list = {10.0};
    s.u_list = {0.0};
    s.n = 1000;
    s.c = 10.0;
    s.tail_samples = 1000;
    CHECK_THROWS_AS(convergence_experiment(m, s), NumericalError);
}

TEST_CASE("results do not depend on the worker count") {
    const auto m = gi_g_inf_model(ScalarDist::exponential(1.0), EtaLaw::xi_times(ScalarDist::lognormal(0.0, 0.25)));
    const std::vector<double> grid{-1.0, 0.0, 2.0};
    const auto a = sample_prelimit(m, 20.0, grid, 500, 5, 1);
    const auto b = sample_prelimit(m, 20.0, grid, 500, 5, 4);
    CHECK(a.rows == b.rows);
    const auto c = sample_stationary(m, 40.0, grid, 500, 5, 1);
    const auto d = sample_stationary(m, 40.0, grid, 500, 5, 3);
    CHECK(c.rows == d.rows);
    const auto ra = dri_diagnostic(m, 1.0, 8, 1000, 2, 1);
    const auto rb = dri_diagnostic(m, 1.0, 8, 1000, 2, 4);
    CHECK(ra.s == rb.s);
}
