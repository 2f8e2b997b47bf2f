#include "immig/errors.hpp"
#include "immig/exact.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace immig;

namespace {

std::vector<ExactValue> ints(std::initializer_list<long long> v) {
    std::vector<ExactValue> out;
    for (long long x : v) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("parsing decimals, fractions and symbolic multiples") {
    CHECK(ExactValue::parse("1.5") == ExactValue(Rational(3, 2)));
    CHECK(ExactValue::parse("7/3") == ExactValue(Rational(7, 3)));
    CHECK(ExactValue::parse("-2e-3") == ExactValue(Rational(-1, 500)));
    const std::map<std::string, double> bases{{"sqrt2", std::sqrt(2.0)}};
    const ExactValue s = ExactValue::parse("3*sqrt2", bases);
    CHECK_FALSE(s.is_rational());
    CHECK(s.approx() == doctest::Approx(3.0 * std::sqrt(2.0)));
    CHECK_THROWS_AS(ExactValue::parse("3*pi", bases), ConfigError);
    CHECK_THROWS_AS(ExactValue::parse("abc"), ConfigError);
}

TEST_CASE("exact arithmetic never drifts") {
    ExactValue acc(0);
    for (int i = 0; i < 10; ++i) acc = acc + ExactValue::parse("0.1");
    CHECK(acc == ExactValue(1));
    CHECK((ExactValue::parse("1/3") * ExactValue(3)) == ExactValue(1));
    CHECK((ExactValue(2) - ExactValue(2)).is_zero());
    CHECK(ExactValue::from_double(0.1) == ExactValue::parse("0.1"));
    CHECK(ExactValue(1) < ExactValue(2));
    CHECK_FALSE(ExactValue(2) < ExactValue(2));
}

TEST_CASE("semigroup enumeration") {
    CHECK(semigroup_enumerate(ints({2, 3}), ExactValue(10)) == ints({0, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
    CHECK(semigroup_enumerate(ints({1}), ExactValue(5)) == ints({0, 1, 2, 3, 4, 5}));
    CHECK(semigroup_enumerate({}, ExactValue(7)) == ints({0}));
    CHECK_THROWS(semigroup_enumerate(ints({0, 2}), ExactValue(5)));
}

TEST_CASE("semigroup enumeration agrees with brute force") {
    for (const auto& atoms : std::vector<std::vector<long>>{{4, 7}, {6, 10, 15}, {5}, {3, 5, 7}}) {
        std::vector<ExactValue> ex;
        for (long a : atoms) ex.emplace_back(static_cast<long long>(a));
        const auto got = semigroup_enumerate(ex, ExactValue(60));
        const auto want = oracle::semigroup_brute(atoms, 60);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == ExactValue(static_cast<long long>(want[i])));
    }
}

TEST_CASE("rational and symbolic atoms") {
    const auto half = semigroup_enumerate({ExactValue::parse("1/2"), ExactValue::parse("3/4")}, ExactValue(2));
    CHECK(half == std::vector<ExactValue>{ExactValue(0), ExactValue::parse("1/2"), ExactValue::parse("3/4"),
                                          ExactValue(1), ExactValue::parse("5/4"), ExactValue::parse("3/2"),
                                          ExactValue::parse("7/4"), ExactValue(2)});
    const std::map<std::string, double> bases{{"sqrt2", std::sqrt(2.0)}};
    const auto mixed = semigroup_enumerate({ExactValue(1), ExactValue::parse("1*sqrt2", bases)}, ExactValue(3));
    // 0, 1, sqrt2, 2, 1+sqrt2, 2sqrt2, 3
    CHECK(mixed.size() == 7);
    for (std::size_t i = 1; i < mixed.size(); ++i) CHECK(mixed[i - 1] < mixed[i]);
}

TEST_CASE("sums of terms") {
    const std::map<std::string, double> bases{{"r2", std::sqrt(2.0)}};
    const ExactValue v = ExactValue::parse("1*r2 - 1", bases);
    CHECK(v.approx() == doctest::Approx(std::sqrt(2.0) - 1.0));
    CHECK(v + ExactValue(1) == ExactValue::parse("1*r2", bases));
    CHECK(ExactValue::parse("1/2 + 1/3") == ExactValue::parse("5/6"));
    CHECK(ExactValue::parse("-2e-3 + 1") == ExactValue::parse("0.998"));
    CHECK_THROWS_AS(ExactValue::parse("1 +"), ConfigError);
}
