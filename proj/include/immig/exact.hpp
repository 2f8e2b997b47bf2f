#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace immig {

using Rational = boost::multiprecision::cpp_rational;

/// Exact real of the form q0 + q1*b1 + q2*b2 + ... with rational q's.
///
/// The b's are declared symbolic bases (e.g. "sqrt2") assumed linearly
/// independent over the rationals together with 1. Equality is exact and
/// never consults the numeric base values; those are used only to order
/// elements and to compare against enumeration bounds.
class ExactValue {
  public:
    ExactValue() = default;
    ExactValue(long long n) : ExactValue(Rational(n)) {}  // NOLINT: implicit on purpose
    explicit ExactValue(Rational q);
    ExactValue(Rational q, std::string base, double base_value);

    /// Sum of terms, each a decimal ("1.5", "-2e-3"), a fraction ("7/3") or
    /// "<coef>*<base>" with a base declared in `bases`, e.g. "1*sqrt2 - 1".
    /// Throws ConfigError otherwise.
    static ExactValue parse(std::string_view text, const std::map<std::string, double>& bases = {});

    /// Exact value of the shortest decimal that round-trips to x.
    static ExactValue from_double(double x);

    [[nodiscard]] double approx() const;
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_rational() const;
    [[nodiscard]] Rational rational_part() const;
    /// Single base (or "" for rational) if the value is a pure multiple of one.
    [[nodiscard]] bool single_base(std::string& base, Rational& coef) const;
    [[nodiscard]] std::string str() const;

    friend ExactValue operator+(const ExactValue& a, const ExactValue& b);
    friend ExactValue operator-(const ExactValue& a, const ExactValue& b);
    friend ExactValue operator-(const ExactValue& a);
    /// Exact product; at most one factor may carry a symbolic base.
    friend ExactValue operator*(const ExactValue& a, const ExactValue& b);
    friend bool operator==(const ExactValue& a, const ExactValue& b) { return a.terms_ == b.terms_; }

    /// Numeric order, ties (distinct values with equal approximations) broken structurally.
    friend bool operator<(const ExactValue& a, const ExactValue& b);

    [[nodiscard]] const std::map<std::string, Rational>& terms() const { return terms_; }
    [[nodiscard]] const std::map<std::string, double>& base_values() const { return base_values_; }

  private:
    void normalize();

    // "" keys the rational part.
    std::map<std::string, Rational> terms_;
    std::map<std::string, double> base_values_;
};

/// Sorted, duplicate-free set of exact values.
std::vector<ExactValue> unique_sorted(std::vector<ExactValue> values);

/// Elements of the additive semigroup generated by `atoms` (nonnegative
/// integer combinations, the empty combination included) that lie in [0, bound].
///
/// Pure multiples of a common base are enumerated by dynamic programming on
/// the integer grid obtained after clearing denominators; mixed bases fall
/// back to breadth-first search over exact values. Atoms must be positive.
std::vector<ExactValue> semigroup_enumerate(const std::vector<ExactValue>& atoms, const ExactValue& bound);

}  // namespace immig
