#include "immig/analysis.hpp"
#include "immig/errors.hpp"
#include "immig/stationary.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace immig;

TEST_CASE("window structure") {
    const auto m = gi_g_inf_model(ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::exponential(1.0)));
    for (int r = 0; r < 50; ++r) {
        Rng rng = Rng::substream(1, streams::window, r);
        const auto w = sample_window(m, 10.0, rng);
        CHECK(w.u > 0.0);
        CHECK(w.u < 1.0);
        CHECK(w.s_minus1() < 0.0);
        CHECK(w.s0() >= 0.0);
        for (std::size_t i = 0; i < w.points.size(); ++i) {
            CHECK(std::abs(w.points[i].time) <= 10.0);
            if (i) {
                CHECK(w.points[i].time > w.points[i - 1].time);
            }
        }
        // Forward gaps equal the stored interarrivals.
        for (std::size_t i = 1; i < w.points.size(); ++i)
            if (w.points[i].index >= 1)
                CHECK(w.points[i].time - w.points[i - 1].time == doctest::Approx(w.points[i].xi).epsilon(1e-12));
    }
    Rng rng(1);
    CHECK_THROWS_AS(sample_window(m, 0.0, rng), ArgumentError);
}

TEST_CASE("deterministic xi: lattice of points with unit gaps") {
    const auto m = gi_g_inf_model(ScalarDist::deterministic(1.0), EtaLaw::independent(ScalarDist::deterministic(1.5)));
    Rng rng(2);
    const auto w = sample_window(m, 5.0, rng);
    for (std::size_t i = 1; i < w.points.size(); ++i)
        CHECK(w.points[i].time - w.points[i - 1].time == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.points.size() == 10);
}

TEST_CASE("deterministic queue: P{Y*(0) = 2} = 1/2") {
    const auto m = gi_g_inf_model(ScalarDist::deterministic(1.0), EtaLaw::independent(ScalarDist::deterministic(1.5)));
    for (int r = 0; r < 200; ++r) {
        Rng rng = Rng::substream(3, streams::window, r);
        const auto w = sample_window(m, 4.0, rng);
        CHECK(eval_stationary(w, 0.0) == 1.0 + (w.u < 0.5 ? 1.0 : 0.0));
    }
}

TEST_CASE("zero marks give a zero process") {
    const auto m = perpetuity_model(1.0, ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::deterministic(1.0)).scaled(ExactValue(0)));
    Rng rng(4);
    const auto w = sample_window(m, 10.0, rng);
    for (double u : {-5.0, 0.0, 2.5}) CHECK(eval_stationary(w, u) == 0.0);
}

TEST_CASE("evaluation radius") {
    const auto m = gi_g_inf_model(ScalarDist::exponential(1.0), EtaLaw::equals_xi());
    Rng rng(5);
    const auto w = sample_window(m, 10.0, rng);
    CHECK_NOTHROW(eval_stationary(w, 5.0));
    CHECK_THROWS_WITH_AS(eval_stationary(w, 5.1), doctest::Contains("enlarge"), RangeError);
}

TEST_CASE("intensity equals 1/mu") {
    const auto m = gi_g_inf_model(ScalarDist::exponential(1.0), EtaLaw::equals_xi());
    std::vector<double> counts;
    for (int r = 0; r < 2000; ++r) {
        Rng rng = Rng::substream(6, streams::window, r);
        counts.push_back(static_cast<double>(sample_window(m, 50.0, rng).points.size()));
    }
    const auto ms = oracle::mean_se(counts);
    CHECK(std::abs(ms.mean - 100.0) < 3.0 * ms.se);
}

TEST_CASE("age and residual are identically distributed") {
    const auto m = gi_g_inf_model(ScalarDist::gamma(2.0, 1.0), EtaLaw::equals_xi());
    std::vector<double> age, res;
    for (int r = 0; r < 10'000; ++r) {
        Rng rng = Rng::substream(7, streams::window, r);
        const auto w = sample_window(m, 1.0, rng);
        age.push_back(-w.s_minus1());
        res.push_back(w.s0());
    }
    // Same draws on both sides would be dependent; use halves.
    std::vector<double> a(age.begin(), age.begin() + 5000), b(res.begin() + 5000, res.end());
    CHECK(ks_two_sample(EmpiricalSample(a), EmpiricalSample(b)).below_null());
    CHECK(ks_one_sample(EmpiricalSample(age), oracle::equilibrium_gamma21).below_null());
}

TEST_CASE("shift invariance of the marked point process") {
    const auto m = gi_g_inf_model(ScalarDist::gamma(2.0, 0.5), EtaLaw::equals_xi());
    auto stats = [&](double shift, std::uint64_t seed) {
        std::vector<double> counts, nearest;
        for (int r = 0; r < 10'000; ++r) {
            Rng rng = Rng::substream(seed, streams::window, r);
            const auto w = sample_window(m, 8.0, rng);
            std::size_t count = 0;
            double first = 4.0;
            for (const auto& p : w.points) {
                const double t = p.time - shift;
                if (t >= 0.0 && t <= 1.0) ++count;
                if (t >= 0.0) first = std::min(first, t);
            }
            counts.push_back(static_cast<double>(count));
            nearest.push_back(first);
        }
        return std::pair{EmpiricalSample(counts), EmpiricalSample(nearest)};
    };
    const auto base = stats(0.0, 8);
    const auto shifted = stats(2.7, 9);
    CHECK(ks_two_sample(base.first, shifted.first).below_null());
    CHECK(ks_two_sample(base.second, shifted.second).below_null());
}

TEST_CASE("truncation tail") {
    SUBCASE("bounded lifetimes give an exact zero") {
        const auto m = gi_g_inf_model(ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::uniform(2.0)));
        const auto t = truncation_tail(m, 5.0, {-1.0, 1.0}, 10'000, 1);
        CHECK(t.estimate == 0.0);
        CHECK(t.exact_zero);
    }
    SUBCASE("exponential decay: monotone in c") {
        const auto m = perpetuity_model(0.2, ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::lognormal(0.0, 1.0)));
        const auto a = truncation_tail(m, 10.0, {0.0, 0.0}, 20'000, 2);
        const auto b = truncation_tail(m, 20.0, {0.0, 0.0}, 20'000, 2);
        CHECK(a.estimate > 0.0);
        CHECK(b.estimate < a.estimate);
    }
    SUBCASE("M/G/inf at c = 40 against the analytic bound") {
        const auto m = gi_g_inf_model(ScalarDist::exponential(1.0), EtaLaw::independent(ScalarDist::exponential(0.5)));
        const auto t = truncation_tail(m, 40.0, {0.0, 0.0}, 100'000, 3);
        // (1/mu) E (eta - c)_+ = 2 e^{-20}.
        CHECK(t.estimate + 3.0 * t.se < 1e-8);
        CHECK(2.0 * std::exp(-20.0) < 1e-8);
    }
}

TEST_CASE("straddle identity: hand cases") {
    const auto det = gi_g_inf_model(ScalarDist::deterministic(1.0), EtaLaw::equals_xi());
    Rng rng(10);
    for (int r = 0; r < 100; ++r) {
        const auto w = sample_window(det, 2.0, rng);
        CHECK(straddle_lhs(w, 0.3, 0.4, MarkPredicate::always()) == 0.0);
        CHECK(straddle_rhs_draw(det, 0.3, 0.4, MarkPredicate::always(), rng) == 0.0);
        CHECK(straddle_lhs(w, infinity, infinity, MarkPredicate::always()) == 1.0);
        CHECK(straddle_rhs_draw(det, infinity, infinity, MarkPredicate::always(), rng) == 1.0);
    }
    CHECK_THROWS_AS(straddle_rhs_draw(det, -1.0, 1.0, MarkPredicate::always(), rng), ArgumentError);
}

TEST_CASE("straddle identity with y infinite matches F_e") {
    const auto m = gi_g_inf_model(ScalarDist::gamma(2.0, 1.0), EtaLaw::equals_xi());
    std::vector<double> lhs, rhs;
    for (int r = 0; r < 100'000; ++r) {
        Rng a = Rng::substream(11, streams::window, r);
        lhs.push_back(straddle_lhs(sample_window(m, 1.0, a), infinity, 1.0, MarkPredicate::always()));
        Rng b = Rng::substream(11, streams::pairs, r);
        rhs.push_back(straddle_rhs_draw(m, infinity, 1.0, MarkPredicate::always(), b));
    }
    const double fe = oracle::equilibrium_gamma21(1.0);
    const auto l = oracle::mean_se(lhs), q = oracle::mean_se(rhs);
    CHECK(std::abs(l.mean - fe) < 3.0 * l.se);
    CHECK(std::abs(q.mean - fe) < 3.0 * q.se);
}

TEST_CASE("stationary mean is (1/mu) times the mark integral") {
    const auto m = gi_g_inf_model(ScalarDist::gamma(2.0, 1.0), EtaLaw::independent(ScalarDist::exponential(0.5)));
    std::vector<double> y;
    for (int r = 0; r < 20'000; ++r) {
        Rng rng = Rng::substream(12, streams::window, r);
        y.push_back(eval_stationary(sample_window(m, 40.0, rng), 0.0));
    }
    const auto ms = oracle::mean_se(y);
    // E eta / mu = 2 / 2.
    CHECK(std::abs(ms.mean - 1.0) < 3.0 * ms.se);
}

TEST_CASE("predicates") {
    CHECK(MarkPredicate::always()(MarkPath::zero()));
    CHECK(MarkPredicate::lifetime_above(1.0)(MarkPath::constant(1.0, 1.5)));
    CHECK_FALSE(MarkPredicate::lifetime_above(1.0)(MarkPath::constant(1.0, 0.5)));
    CHECK(MarkPredicate::amplitude_in(0.5, 2.0)(MarkPath::exp_decay(1.0, 1.0)));
    CHECK_FALSE(MarkPredicate::amplitude_in(0.5, 2.0)(MarkPath::exp_decay(2.0, 1.0)));
}
