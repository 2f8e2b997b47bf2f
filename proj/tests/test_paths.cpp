#include "immig/errors.hpp"
#include "immig/paths.hpp"

#include <doctest.h>

#include <cmath>

using namespace immig;

TEST_CASE("const path evaluation and suprema") {
    const auto p = MarkPath::constant(1.0, 1.5);
    CHECK(eval_path(p, 0.2) == 1.0);
    CHECK(eval_path(p, 1.5) == 0.0);
    CHECK(eval_path(p, 0.0) == 1.0);
    CHECK(sup_abs(p, 1.0, 2.0).value == 1.0);
    CHECK(sup_abs(p, 2.0, 3.0).value == 0.0);
    CHECK(sup_abs(p, 1.5, 3.0).value == 0.0);
    CHECK(jump_set(p) == std::vector<double>{0.0, 1.5});
    CHECK(jump_set(MarkPath::constant(0.0, 1.5)).empty());
}

TEST_CASE("exponential decay") {
    const auto p = MarkPath::exp_decay(2.0, 1.0);
    CHECK(eval_path(p, std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sup_abs(p, 0.0, 1.0).value == 2.0);
    CHECK(sup_abs(p, 1.0, 2.0).value == doctest::Approx(2.0 * std::exp(-1.0)));
    CHECK(sup_abs(p, -3.0, -1.0).value == 0.0);
    CHECK(jump_set(p) == std::vector<double>{0.0});
    CHECK(p.integral() == doctest::Approx(2.0));
    CHECK_THROWS_AS(MarkPath::exp_decay(1.0, 0.0), ArgumentError);
}

TEST_CASE("every kind vanishes on negative times") {
    const std::vector<MarkPath> paths{MarkPath::constant(3.0), MarkPath::exp_decay(-2.0, 0.5),
                                      MarkPath::step({0.0, 1.0}, {1.0, -4.0}), MarkPath::zero()};
    for (const auto& p : paths)
        for (double t : {-1.0, -1e-12, -100.0}) CHECK(eval_path(p, t) == 0.0);
}

TEST_CASE("step paths are right-continuous and honour the kill time") {
    const auto p = MarkPath::step({0.5, 1.0, 2.0}, {1.0, -3.0, 2.0}, 4.0);
    CHECK(eval_path(p, 0.49) == 0.0);
    CHECK(eval_path(p, 0.5) == 1.0);
    CHECK(eval_path(p, 1.0) == -3.0);
    CHECK(eval_path(p, 3.9) == 2.0);
    CHECK(eval_path(p, 4.0) == 0.0);
    CHECK(jump_set(p) == std::vector<double>{0.5, 1.0, 2.0, 4.0});
    CHECK(p.lifetime() == 4.0);
    CHECK(p.integral() == doctest::Approx(0.5 - 3.0 + 4.0));
    CHECK_THROWS_AS(MarkPath::step({1.0, 1.0}, {1.0, 2.0}), ArgumentError);
    CHECK_THROWS_AS(MarkPath::step({-1.0}, {1.0}), ArgumentError);
}

TEST_CASE("step sup matches a dense-grid brute force") {
    const auto p = MarkPath::step({0.0, 0.7, 1.3, 2.9}, {0.5, -2.0, 1.0, 0.0});
    for (double a = -1.0; a < 4.0; a += 0.37)
        for (double w : {0.05, 0.3, 1.0, 2.5}) {
            double brute = 0.0;
            for (int i = 0; i <= 20000; ++i) brute = std::max(brute, std::abs(p.eval(a + w * i / 20000.0)));
            CHECK(p.sup_abs(a, a + w).value == brute);
        }
}

TEST_CASE("continuity away from the jump set") {
    const auto p = MarkPath::step({0.0, 0.7, 1.3}, {0.5, -2.0, 1.0}, 2.0);
    const auto jumps = p.jump_set();
    for (double t = 0.05; t < 3.0; t += 0.1) {
        bool near = false;
        for (double j : jumps) near = near || std::abs(j - t) < 1e-3;
        if (!near) CHECK(p.eval(t - 1e-6) == p.eval(t));
    }
}

TEST_CASE("reversed interval is rejected") {
    CHECK_THROWS_AS((void)MarkPath::constant(1.0).sup_abs(2.0, 1.0), ArgumentError);
}

TEST_CASE("custom paths report envelope bounds") {
    CustomPath c;
    c.evaluate = [](double t) { return std::sin(t) / (1.0 + t); };
    c.envelope = [](double t) { return 1.0 / (1.0 + std::max(t, 0.0)); };
    c.jumps = {};
    const auto p = MarkPath::custom(c);
    CHECK(p.kind() == PathKind::Custom);
    CHECK(p.eval(-1.0) == 0.0);
    const SupBound b = p.sup_abs(1.0, 2.0);
    CHECK_FALSE(b.exact);
    CHECK(b.value >= std::abs(std::sin(1.5) / 2.5));
}

TEST_CASE("support end and capped integrals") {
    CHECK(MarkPath::constant(1.0, 2.0).support_end() == 2.0);
    CHECK(MarkPath::constant(1.0).support_end() == infinity);
    CHECK(MarkPath::exp_decay(1.0, 1.0).support_end(1e-15) == doctest::Approx(15.0 * std::log(10.0)));
    // min(1, sup over [s, s+1] of 1{0 <= v < 2}) is 1 for s in [-1, 2).
    CHECK(MarkPath::constant(1.0, 2.0).capped_window_sup_integral(-5.0, 5.0, 1.0) == doctest::Approx(3.0));
    CHECK(MarkPath::constant(0.5, 2.0).capped_window_sup_integral(-5.0, 5.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("paths compare by value") {
    CHECK(MarkPath::constant(1.0, 1.0) == MarkPath::constant(1.0, 1.0));
    CHECK_FALSE(MarkPath::constant(1.0, 1.0) == MarkPath::constant(1.0, 2.0));
}
