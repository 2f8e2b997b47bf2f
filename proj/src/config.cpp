#include "immig/config.hpp"

#include "immig/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace immig {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

/// Splits on `sep` outside parentheses.
std::vector<std::string> split_top(std::string_view s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

const std::vector<std::string> known_sections{"model", "experiment", "run"};

std::string qualified(const std::string& section, const std::string& key) { return section + "." + key; }

ExactValue parse_exact(std::string_view text, const std::string& key, const std::map<std::string, double>& bases) {
    try {
        return ExactValue::parse(trim(text), bases);
    } catch (const std::exception& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

}  // namespace

double parse_number(std::string_view text, const std::string& key) {
    const std::string t = lower(trim(text));
    if (t == "inf" || t == "+inf" || t == "infinity") return infinity;
    if (t == "-inf") return -infinity;
    double v = 0.0;
    const auto* end = t.data() + t.size();
    const auto res = std::from_chars(t.data(), end, v);
    if (t.empty() || res.ec != std::errc() || res.ptr != end || std::isnan(v))
        throw ConfigError(key + ": expected a number, got '" + std::string(text) + "'");
    return v;
}

std::vector<double> parse_list(std::string_view text, const std::string& key) {
    const std::string t = trim(text);
    if (t.empty()) return {};
    if (t.find(':') != std::string::npos) {
        const auto parts = split_top(t, ':');
        if (parts.size() != 3) throw ConfigError(key + ": range must read start:stop:step");
        const double a = parse_number(parts[0], key), b = parse_number(parts[1], key), h = parse_number(parts[2], key);
        if (!(h > 0.0) || !std::isfinite(a) || !std::isfinite(b) || b < a)
            throw ConfigError(key + ": range needs finite start <= stop and a positive step");
        const auto steps = static_cast<long>(std::floor((b - a) / h + 1e-9));
        if (steps > 1'000'000) throw ConfigError(key + ": range has too many points");
        std::vector<double> out;
        for (long i = 0; i <= steps; ++i) out.push_back(a + static_cast<double>(i) * h);
        return out;
    }
    std::vector<double> out;
    for (const auto& p : split_top(t, ',')) out.push_back(parse_number(p, key));
    return out;
}

// ---------------------------------------------------------------------------

Config Config::parse(std::string_view text, std::string_view origin) {
    Config cfg;
    std::istringstream in{std::string(text)};
    std::string line, section;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string where = std::string(origin) + ":" + std::to_string(number);
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ConfigError(where + ": malformed section header '" + t + "'");
            section = lower(trim(t.substr(1, t.size() - 2)));
            if (std::find(known_sections.begin(), known_sections.end(), section) == known_sections.end())
                throw ConfigError(where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        if (section.empty()) throw ConfigError(where + ": key outside of any section");
        const std::string key = lower(trim(t.substr(0, eq)));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (cfg.has(section, key)) throw ConfigError(where + ": duplicate key " + qualified(section, key));
        cfg.sections_[section][key] = Entry{trim(t.substr(eq + 1))};
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

void Config::set(std::string_view assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq)
        throw ConfigError("--set expects section.key=value, got '" + std::string(assignment) + "'");
    set(lower(trim(assignment.substr(0, dot))), lower(trim(assignment.substr(dot + 1, eq - dot - 1))),
        trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string& section, const std::string& key, std::string value) {
    if (std::find(known_sections.begin(), known_sections.end(), section) == known_sections.end())
        throw ConfigError("unknown section [" + section + "] in override of " + key);
    sections_[section][key] = Entry{std::move(value)};
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::optional<std::string> Config::take(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return std::nullopt;
    const auto e = s->second.find(key);
    if (e == s->second.end()) return std::nullopt;
    e->second.used = true;
    return e->second.value;
}

std::string Config::require(const std::string& section, const std::string& key) const {
    auto v = take(section, key);
    if (!v || v->empty()) throw ConfigError(qualified(section, key) + " is required");
    return *v;
}

std::string Config::get_string(const std::string& section, const std::string& key, const std::string& fallback) const {
    return take(section, key).value_or(fallback);
}

double Config::get_double(const std::string& section, const std::string& key, double fallback) const {
    const auto v = take(section, key);
    return v ? parse_number(*v, qualified(section, key)) : fallback;
}

double Config::get_positive(const std::string& section, const std::string& key, double fallback) const {
    const double v = get_double(section, key, fallback);
    if (!(v > 0.0)) throw ConfigError(qualified(section, key) + " must be positive");
    return v;
}

std::size_t Config::get_count(const std::string& section, const std::string& key, std::size_t fallback) const {
    const auto v = take(section, key);
    if (!v) return fallback;
    const double x = parse_number(*v, qualified(section, key));
    if (!(x >= 1.0) || x != std::floor(x) || x > 1e12)
        throw ConfigError(qualified(section, key) + " must be a positive integer, got '" + *v + "'");
    return static_cast<std::size_t>(x);
}

std::uint64_t Config::get_u64(const std::string& section, const std::string& key, std::uint64_t fallback) const {
    const auto v = take(section, key);
    if (!v) return fallback;
    std::uint64_t x = 0;
    const std::string t = trim(*v);
    const auto res = std::from_chars(t.data(), t.data() + t.size(), x);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ConfigError(qualified(section, key) + " must be a nonnegative integer, got '" + *v + "'");
    return x;
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key,
                                     const std::vector<double>& fallback) const {
    const auto v = take(section, key);
    return v ? parse_list(*v, qualified(section, key)) : fallback;
}

std::vector<std::string> Config::get_items(const std::string& section, const std::string& key,
                                           const std::vector<std::string>& fallback) const {
    const auto v = take(section, key);
    if (!v) return fallback;
    std::vector<std::string> out;
    for (auto& item : split_top(*v, ';'))
        if (!item.empty()) out.push_back(item);
    return out;
}

void Config::expect_all_used() const {
    for (const auto& [name, entries] : sections_)
        for (const auto& [key, entry] : entries)
            if (!entry.used) throw ConfigError("unknown or unused key " + qualified(name, key));
}

std::map<std::string, std::string> Config::section(const std::string& name) const {
    std::map<std::string, std::string> out;
    const auto s = sections_.find(name);
    if (s != sections_.end())
        for (const auto& [k, e] : s->second) out[k] = e.value;
    return out;
}

// ---------------------------------------------------------------------------

ScalarDist parse_distribution(std::string_view text, const std::string& key, const std::map<std::string, double>& bases) {
    const std::string t = trim(text);
    const auto open = t.find('(');
    if (open == std::string::npos || t.back() != ')')
        throw ConfigError(key + ": expected a distribution like exponential(1), got '" + t + "'");
    const std::string name = lower(trim(t.substr(0, open)));
    const std::string inner = t.substr(open + 1, t.size() - open - 2);
    const auto args = split_top(inner, ',');
    auto need = [&](std::size_t n) {
        if (args.size() != n || (n > 0 && args[0].empty()))
            throw ConfigError(key + ": " + name + " takes " + std::to_string(n) + " argument(s)");
    };
    auto num = [&](std::size_t i) { return parse_number(args[i], key); };
    try {
        if (name == "exponential") {
            need(1);
            return ScalarDist::exponential(num(0));
        }
        if (name == "gamma") {
            need(2);
            return ScalarDist::gamma(num(0), num(1));
        }
        if (name == "uniform") {
            need(1);
            return ScalarDist::uniform(num(0));
        }
        if (name == "deterministic") {
            need(1);
            return ScalarDist::deterministic(parse_exact(args[0], key, bases));
        }
        if (name == "pareto") {
            need(2);
            return ScalarDist::pareto(num(0), num(1));
        }
        if (name == "lognormal") {
            need(2);
            return ScalarDist::lognormal(num(0), num(1));
        }
        if (name == "discrete") {
            std::vector<ExactValue> atoms;
            std::vector<double> probs;
            for (const auto& a : args) {
                const auto parts = split_top(a, ':');
                if (parts.size() != 2) throw ConfigError(key + ": discrete atoms read value:probability");
                atoms.push_back(parse_exact(parts[0], key, bases));
                probs.push_back(parse_number(parts[1], key));
            }
            return ScalarDist::discrete(std::move(atoms), std::move(probs));
        }
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        if (what.rfind(key, 0) == 0) throw;
        throw ConfigError(key + ": " + what);
    } catch (const std::exception& e) {
        throw ConfigError(key + ": " + e.what());
    }
    throw ConfigError(key + ": unknown distribution family '" + name + "'");
}

namespace {

std::map<std::string, double> parse_bases(const Config& cfg) {
    std::map<std::string, double> bases;
    const auto v = cfg.take("model", "bases");
    if (!v) return bases;
    for (const auto& item : split_top(*v, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("model.bases: entries read name=value");
        const std::string name = trim(item.substr(0, eq));
        if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
            throw ConfigError("model.bases: base names must start with a letter");
        const double value = parse_number(item.substr(eq + 1), "model.bases");
        if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError("model.bases: base values must be positive");
        bases[name] = value;
    }
    return bases;
}

JumpLaw parse_jump_law(const std::string& text, const std::string& key, const std::map<std::string, double>& bases) {
    JumpLaw law;
    for (const auto& item : split_top(text, ',')) {
        if (item.empty()) continue;
        if (lower(item) == "continuous") {
            law.continuous_part = true;
            continue;
        }
        law.atoms.push_back(parse_exact(item, key, bases));
    }
    return law;
}

EtaLaw parse_eta(const Config& cfg, const std::map<std::string, double>& bases) {
    const std::string dependence = lower(cfg.get_string("model", "dependence", "independent"));
    if (dependence == "independent") return EtaLaw::independent(parse_distribution(cfg.require("model", "eta"), "model.eta", bases));
    if (dependence == "eta=xi") return EtaLaw::equals_xi();
    if (dependence == "eta=xi*w") return EtaLaw::xi_times(parse_distribution(cfg.require("model", "w"), "model.w", bases));
    if (dependence == "custom-table") {
        std::vector<EtaLaw::TableRow> rows;
        for (const auto& item : split_top(cfg.require("model", "eta_table"), ';')) {
            if (item.empty()) continue;
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw ConfigError("model.eta_table: rows read upper: distribution");
            EtaLaw::TableRow row{infinity, std::nullopt,
                                 parse_distribution(item.substr(colon + 1), "model.eta_table", bases)};
            const std::string upper = lower(trim(item.substr(0, colon)));
            if (upper != "inf") {
                row.exact_upper = parse_exact(upper, "model.eta_table", bases);
                row.upper = row.exact_upper->approx();
            }
            rows.push_back(std::move(row));
        }
        try {
            return EtaLaw::table(std::move(rows));
        } catch (const std::exception& e) {
            throw ConfigError(std::string("model.eta_table: ") + e.what());
        }
    }
    throw ConfigError("model.dependence: expected independent, eta=xi, eta=xi*W or custom-table, got '" + dependence + "'");
}

}  // namespace

PairModel build_model(const Config& cfg) {
    const auto bases = parse_bases(cfg);
    const std::string kind = lower(cfg.require("model", "kind"));
    const ScalarDist xi = parse_distribution(cfg.require("model", "xi"), "model.xi", bases);
    EtaLaw eta = parse_eta(cfg, bases);
    if (const auto scale = cfg.take("model", "eta_scale")) eta = eta.scaled(parse_exact(*scale, "model.eta_scale", bases));

    std::optional<double> xi_bound;
    if (cfg.has("model", "xi_bound")) xi_bound = cfg.get_positive("model", "xi_bound", 1.0);

    const std::string sb = lower(cfg.get_string("model", "size_bias", "auto"));
    SizeBiasMethod method = SizeBiasMethod::Automatic;
    if (sb == "exact") method = SizeBiasMethod::Exact;
    else if (sb == "rejection") method = SizeBiasMethod::Rejection;
    else if (sb != "auto") throw ConfigError("model.size_bias: expected auto, exact or rejection");

    auto build = [&]() -> PairModel {
        if (kind == "gi_g_inf") return gi_g_inf_model(xi, eta, method, xi_bound);
        if (kind == "perpetuity") {
            const double a = cfg.get_positive("model", "rate", 1.0);
            if (!cfg.has("model", "rate") || !std::isfinite(a)) throw ConfigError("model.rate is required for perpetuity");
            return perpetuity_model(a, xi, eta, method, xi_bound);
        }
        if (kind == "ctrw") return ctrw_model(xi, eta, method, xi_bound);
        throw ConfigError("model.kind: expected gi_g_inf, perpetuity or ctrw, got '" + kind + "'");
    };
    PairModel model = [&] {
        try {
            return build();
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("model: ") + e.what());
        }
    }();

    const auto d = cfg.take("model", "d");
    const auto d_xi = cfg.take("model", "d_xi");
    if (d.has_value() != d_xi.has_value()) throw ConfigError("model.D and model.D_xi must be declared together");
    if (d) model = model.with_jump_laws(parse_jump_law(*d, "model.D", bases), parse_jump_law(*d_xi, "model.D_xi", bases));

    if (const auto lattice = cfg.take("model", "lattice")) {
        std::vector<ExactValue> declared;
        for (const auto& item : split_top(*lattice, ','))
            if (!item.empty()) declared.push_back(parse_exact(item, "model.lattice", bases));
        if (unique_sorted(declared) != model.meta().lattice)
            throw ConfigError("model.lattice does not match the atoms of model.xi");
    }
    return model;
}

}  // namespace immig
