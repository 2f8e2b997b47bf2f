#include "immig/exact.hpp"

#include "immig/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>

namespace immig {

namespace {

using boost::multiprecision::cpp_int;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

cpp_int pow10(long e) {
    cpp_int r = 1;
    for (long i = 0; i < e; ++i) r *= 10;
    return r;
}

bool parse_decimal(std::string_view s, Rational& out) {
    s = trim(s);
    if (s.empty()) return false;
    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    cpp_int mantissa = 0;
    long frac_digits = 0;
    bool any_digit = false;
    bool in_fraction = false;
    std::size_t i = 0;
    for (; i < s.size(); ++i) {
        const char ch = s[i];
        if (ch >= '0' && ch <= '9') {
            mantissa = mantissa * 10 + (ch - '0');
            any_digit = true;
            if (in_fraction) ++frac_digits;
        } else if (ch == '.' && !in_fraction) {
            in_fraction = true;
        } else {
            break;
        }
    }
    if (!any_digit) return false;
    long exponent = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') return false;
        auto tail = s.substr(i + 1);
        if (!tail.empty() && tail.front() == '+') tail.remove_prefix(1);
        auto [p, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), exponent);
        if (ec != std::errc{} || p != tail.data() + tail.size()) return false;
        if (std::abs(exponent) > 4000) return false;
    }
    exponent -= frac_digits;
    Rational value = exponent >= 0 ? Rational(mantissa * pow10(exponent))
                                   : Rational(mantissa, pow10(-exponent));
    out = negative ? Rational(-value) : value;
    return true;
}

bool parse_rational(std::string_view s, Rational& out) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return parse_decimal(s, out);
    Rational num, den;
    if (!parse_decimal(s.substr(0, slash), num) || !parse_decimal(s.substr(slash + 1), den)) return false;
    if (den == 0) return false;
    out = num / den;
    return true;
}

}  // namespace

ExactValue::ExactValue(Rational q) {
    terms_[""] = std::move(q);
    normalize();
}

ExactValue::ExactValue(Rational q, std::string base, double base_value) {
    if (!base.empty()) {
        if (!(std::isfinite(base_value) && base_value > 0))
            throw ConfigError("symbolic base '" + base + "' needs a positive finite numeric value");
        base_values_[base] = base_value;
    }
    terms_[std::move(base)] = std::move(q);
    normalize();
}

void ExactValue::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0) {
            base_values_.erase(it->first);
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

namespace {

ExactValue parse_term(std::string_view s, const std::map<std::string, double>& bases) {
    const auto star = s.find('*');
    Rational q;
    if (star == std::string_view::npos) {
        if (!parse_rational(s, q))
            throw ConfigError("value '" + std::string(s) + "' is not an exact decimal or fraction");
        return ExactValue(q);
    }
    const auto coef = trim(s.substr(0, star));
    const std::string base(trim(s.substr(star + 1)));
    const auto found = bases.find(base);
    if (found == bases.end())
        throw ConfigError("value '" + std::string(s) + "' uses undeclared base '" + base + "'");
    if (!parse_rational(coef, q))
        throw ConfigError("coefficient in '" + std::string(s) + "' is not an exact decimal or fraction");
    return ExactValue(q, base, found->second);
}

}  // namespace

ExactValue ExactValue::parse(std::string_view text, const std::map<std::string, double>& bases) {
    const auto s = trim(text);
    if (s.empty()) throw ConfigError("empty exact value");
    // Split "a + b*base - c" into signed terms; a sign after an exponent marker belongs to the number.
    ExactValue total;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= s.size(); ++i) {
        const bool end = i == s.size();
        if (!end && !((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E' && s[i - 1] != '*'))
            continue;
        auto term = trim(s.substr(start, i - start));
        bool negative = false;
        if (!term.empty() && (term[0] == '+' || term[0] == '-') && start > 0) {
            negative = term[0] == '-';
            term = trim(term.substr(1));
        }
        if (term.empty()) throw ConfigError("value '" + std::string(s) + "' has an empty term");
        const ExactValue v = parse_term(term, bases);
        total = negative ? total - v : total + v;
        start = i;
    }
    return total;
}

ExactValue ExactValue::from_double(double x) {
    if (!std::isfinite(x)) throw ConfigError("non-finite value has no exact representation");
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    Rational q;
    parse_decimal(std::string_view(buf, static_cast<std::size_t>(p - buf)), q);
    return ExactValue(q);
}

double ExactValue::approx() const {
    double v = 0.0;
    for (const auto& [base, coef] : terms_) {
        const double c = static_cast<double>(coef);
        v += base.empty() ? c : c * base_values_.at(base);
    }
    return v;
}

bool ExactValue::is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.count("")); }

Rational ExactValue::rational_part() const {
    auto it = terms_.find("");
    return it == terms_.end() ? Rational(0) : it->second;
}

bool ExactValue::single_base(std::string& base, Rational& coef) const {
    if (terms_.size() != 1) return false;
    base = terms_.begin()->first;
    coef = terms_.begin()->second;
    return true;
}

std::string ExactValue::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [base, coef] : terms_) {
        std::string piece = coef.str();
        if (!base.empty()) piece += "*" + base;
        if (!out.empty() && piece.front() != '-') out += "+";
        out += piece;
    }
    return out;
}

ExactValue operator+(const ExactValue& a, const ExactValue& b) {
    ExactValue r = a;
    for (const auto& [base, coef] : b.terms_) {
        r.terms_[base] += coef;
        if (!base.empty()) r.base_values_[base] = b.base_values_.at(base);
    }
    r.normalize();
    return r;
}

ExactValue operator-(const ExactValue& a) {
    ExactValue r = a;
    for (auto& [base, coef] : r.terms_) coef = -coef;
    return r;
}

ExactValue operator-(const ExactValue& a, const ExactValue& b) { return a + (-b); }

ExactValue operator*(const ExactValue& a, const ExactValue& b) {
    if (!a.is_rational() && !b.is_rational())
        throw ConfigError("product of two symbolic values " + a.str() + " and " + b.str() +
                          " is not representable");
    const ExactValue& sym = a.is_rational() ? b : a;
    const Rational q = a.is_rational() ? a.rational_part() : b.rational_part();
    ExactValue r = sym;
    for (auto& [base, coef] : r.terms_) coef *= q;
    r.normalize();
    return r;
}

bool operator<(const ExactValue& a, const ExactValue& b) {
    if (a == b) return false;
    if (a.is_rational() && b.is_rational()) return a.rational_part() < b.rational_part();
    const double x = a.approx(), y = b.approx();
    if (x != y) return x < y;
    return a.terms_ < b.terms_;
}

std::vector<ExactValue> unique_sorted(std::vector<ExactValue> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

std::vector<ExactValue> semigroup_enumerate(const std::vector<ExactValue>& atoms, const ExactValue& bound) {
    constexpr std::size_t max_elements = 50'000'000;
    if (bound < ExactValue(0)) return {};
    for (const auto& a : atoms)
        if (!(ExactValue(0) < a)) throw ConfigError("semigroup atom " + a.str() + " is not positive");
    if (atoms.empty()) return {ExactValue(0)};

    std::string base;
    Rational coef;
    bool common = true;
    std::vector<Rational> coefs;
    for (const auto& a : atoms) {
        std::string b;
        Rational q;
        if (!a.single_base(b, q) || (!coefs.empty() && b != base)) {
            common = false;
            break;
        }
        base = b;
        coefs.push_back(q);
    }

    if (common) {
        // Clear denominators: atoms become integer multiples m_i of unit = g/L.
        cpp_int lcm = 1;
        for (const auto& q : coefs) lcm = boost::multiprecision::lcm(lcm, denominator(q));
        std::vector<cpp_int> scaled;
        cpp_int g = 0;
        for (const auto& q : coefs) {
            scaled.push_back(numerator(q) * (lcm / denominator(q)));
            g = boost::multiprecision::gcd(g, scaled.back());
        }
        const Rational unit(g, lcm);
        const double base_value = base.empty() ? 1.0 : atoms.front().base_values().at(base);
        cpp_int max_k;
        if (base.empty()) {
            if (!bound.is_rational())
                max_k = cpp_int(static_cast<long long>(std::floor(bound.approx() / static_cast<double>(unit))));
            else {
                const Rational ratio = bound.rational_part() / unit;
                max_k = numerator(ratio) / denominator(ratio);
            }
        } else {
            max_k = cpp_int(static_cast<long long>(std::floor(bound.approx() / (static_cast<double>(unit) * base_value))));
        }
        if (max_k >= max_elements)
            throw ConfigError("semigroup enumeration bound " + bound.str() + " needs more than " +
                              std::to_string(max_elements) + " grid cells");
        const auto k_max = static_cast<std::size_t>(max_k);
        std::vector<std::size_t> steps;
        for (const auto& s : scaled) steps.push_back(static_cast<std::size_t>(s / g));
        std::vector<char> reachable(k_max + 1, 0);
        reachable[0] = 1;
        for (std::size_t k = 1; k <= k_max; ++k)
            for (std::size_t m : steps)
                if (m <= k && reachable[k - m]) {
                    reachable[k] = 1;
                    break;
                }
        std::vector<ExactValue> out;
        for (std::size_t k = 0; k <= k_max; ++k)
            if (reachable[k]) out.emplace_back(unit * Rational(static_cast<long long>(k)), base, base_value);
        return out;
    }

    // Mixed bases: breadth-first over exact sums.
    const double limit = bound.approx();
    std::set<ExactValue> seen{ExactValue(0)};
    std::vector<ExactValue> frontier{ExactValue(0)};
    while (!frontier.empty()) {
        std::vector<ExactValue> next;
        for (const auto& v : frontier)
            for (const auto& a : atoms) {
                ExactValue w = v + a;
                if (w.approx() > limit) continue;
                if (seen.insert(w).second) next.push_back(std::move(w));
            }
        if (seen.size() > max_elements) throw ConfigError("semigroup enumeration exceeded element cap");
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

}  // namespace immig
