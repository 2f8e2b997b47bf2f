#include "immig/errors.hpp"
#include "immig/models.hpp"
#include "immig/renewal.hpp"
#include "immig/stats.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace immig;

namespace {

PairModel det_queue(double eta) {
    return gi_g_inf_model(ScalarDist::deterministic(1.0), EtaLaw::independent(ScalarDist::deterministic(eta)));
}

}  // namespace

TEST_CASE("deterministic walk") {
    Rng rng(1);
    const auto w = simulate_walk(det_queue(1.5), 2.5, rng);
    CHECK(std::vector<double>(w.arrivals().begin(), w.arrivals().end()) == std::vector<double>{0, 1, 2, 3});
    CHECK(w.first_passage(2.5) == 3);
    CHECK(w.first_passage(2.0) == 3);
    CHECK(w.first_passage(-0.5) == 0);
    CHECK_THROWS_AS((void)w.first_passage(2.6), RangeError);
    CHECK(w.eval_immigration(2.2) == 2.0);
    CHECK(w.eval_immigration(-1.0) == 0.0);
    const auto [age, residual] = w.age_residual_at(2.2);
    CHECK(age == doctest::Approx(0.2));
    CHECK(residual == doctest::Approx(0.8));
    CHECK(w.count_points({0.0, 2.5}) == 3);
    CHECK(w.count_points({2.0, 1.0}) == 0);
    CHECK_THROWS_AS((void)w.count_points({0.0, 3.5}), RangeError);
    CHECK_THROWS_AS((void)w.eval_immigration(2.0, std::vector<double>{0.0, 1.0}), RangeError);
    CHECK_THROWS_AS(simulate_walk(det_queue(1.0), -1.0, rng), ArgumentError);
}

TEST_CASE("deterministic count over [0, 4.5]") {
    Rng rng(1);
    CHECK(simulate_walk(det_queue(1.0), 4.5, rng).count_points({0.0, 4.5}) == 5);
}

TEST_CASE("horizon zero still has a first epoch") {
    Rng rng(1);
    const auto w = simulate_walk(gi_g_inf_model(ScalarDist::exponential(1.0), EtaLaw::equals_xi()), 0.0, rng);
    REQUIRE(w.arrivals().size() == 2);
    CHECK(w.arrivals()[1] > 0.0);
}

TEST_CASE("perpetuity evaluation by hand") {
    const auto m = perpetuity_model(std::log(2.0), ScalarDist::deterministic(1.0),
                                    EtaLaw::independent(ScalarDist::deterministic(1.0)));
    Rng rng(1);
    const auto w = simulate_walk(m, 3.0, rng);
    const double expected = std::pow(2.0, -2.5) + std::pow(2.0, -1.5) + std::pow(2.0, -0.5);
    CHECK(w.eval_immigration(2.5) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected == doctest::Approx(1.23744).epsilon(1e-5));
}

TEST_CASE("Poisson counts") {
    const auto m = gi_g_inf_model(ScalarDist::exponential(2.0), EtaLaw::equals_xi());
    std::vector<double> counts;
    for (int i = 0; i < 400; ++i) {
        Rng rng = Rng::substream(9, streams::walk, i);
        counts.push_back(static_cast<double>(simulate_walk(m, 100.0, rng).count_points({0.0, 100.0})));
    }
    const auto ms = oracle::mean_se(counts);
    CHECK(std::abs(ms.mean - 201.0) < 3.0 * ms.se);  // S_0 = 0 is counted too
}

TEST_CASE("walk invariants on random realizations") {
    const auto m = gi_g_inf_model(ScalarDist::gamma(2.0, 0.5), EtaLaw::xi_times(ScalarDist::lognormal(0.0, 0.5)));
    for (int r = 0; r < 20; ++r) {
        Rng rng = Rng::substream(3, streams::walk, r);
        const auto w = simulate_walk(m, 30.0, rng);
        const auto s = w.arrivals();
        CHECK(s[0] == 0.0);
        CHECK(s.back() > 30.0);
        for (double t = 0.0; t <= 30.0; t += 0.173) {
            const std::size_t nu = w.first_passage(t);
            REQUIRE(nu >= 1);
            CHECK(s[nu - 1] <= t);
            CHECK(t < s[nu]);
            const auto [age, residual] = w.age_residual_at(t);
            CHECK(age + residual == doctest::Approx(w.interarrivals()[nu - 1]).epsilon(1e-12));

            // Full sum over all epochs equals the nu(t)-truncated evaluator exactly.
            double full = 0.0;
            for (std::size_t k = 0; k < w.marks().size(); ++k) full += w.marks()[k].eval(t - s[k]);
            CHECK(full == w.eval_immigration(t));
        }
    }
}

TEST_CASE("grid evaluation equals pointwise evaluation") {
    const auto m = perpetuity_model(0.5, ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::lognormal(0.0, 1.0)));
    Rng rng(4);
    const auto w = simulate_walk(m, 60.0, rng);
    const std::vector<double> grid{-3.0, -1.0, 0.0, 0.5, 2.0, 7.0};
    const auto ys = w.eval_immigration(50.0, grid);
    for (std::size_t j = 0; j < grid.size(); ++j)
        CHECK(ys[j] == doctest::Approx(w.eval_immigration(50.0 + grid[j])).epsilon(1e-13));
}

TEST_CASE("residual life is exponential by memorylessness") {
    const auto m = gi_g_inf_model(ScalarDist::exponential(1.0), EtaLaw::equals_xi());
    std::vector<double> res;
    for (int i = 0; i < 10'000; ++i) {
        Rng rng = Rng::substream(5, streams::walk, i);
        res.push_back(simulate_walk(m, 50.0, rng).age_residual_at(50.0).second);
    }
    CHECK(ks_one_sample(EmpiricalSample(res), [](double x) { return 1.0 - std::exp(-x); }).below_null());
}

TEST_CASE("age at a large time follows the equilibrium law") {
    const auto m = gi_g_inf_model(ScalarDist::gamma(2.0, 1.0), EtaLaw::equals_xi());
    std::vector<double> ages;
    for (int i = 0; i < 10'000; ++i) {
        Rng rng = Rng::substream(6, streams::walk, i);
        ages.push_back(simulate_walk(m, 200.0, rng).age_residual_at(200.0).first);
    }
    CHECK(ks_one_sample(EmpiricalSample(ages), oracle::equilibrium_gamma21).below_null());
}
