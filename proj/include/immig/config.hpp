#pragma once

#include "immig/dist.hpp"
#include "immig/exact.hpp"
#include "immig/models.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace immig {

/// Sectioned key = value text with the sections [model], [experiment], [run].
///
/// Every lookup marks its key as used; expect_all_used() then rejects keys
/// the command never read, so typos surface as errors instead of defaults.
/// All conversion failures throw ConfigError naming "section.key".
class Config {
  public:
    static Config parse(std::string_view text, std::string_view origin = "config");
    static Config load(const std::filesystem::path& path);

    /// "section.key=value", as given to --set.
    void set(std::string_view assignment);
    void set(const std::string& section, const std::string& key, std::string value);

    [[nodiscard]] bool has(const std::string& section, const std::string& key) const;
    std::optional<std::string> take(const std::string& section, const std::string& key) const;
    std::string require(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    double get_positive(const std::string& section, const std::string& key, double fallback) const;
    std::size_t get_count(const std::string& section, const std::string& key, std::size_t fallback) const;
    std::uint64_t get_u64(const std::string& section, const std::string& key, std::uint64_t fallback) const;
    /// "a, b, c" or "start:stop:step" (inclusive of stop up to rounding).
    std::vector<double> get_list(const std::string& section, const std::string& key,
                                 const std::vector<double>& fallback) const;
    /// Separated by ';'.
    std::vector<std::string> get_items(const std::string& section, const std::string& key,
                                       const std::vector<std::string>& fallback) const;

    void expect_all_used() const;

    /// Key/value pairs of one section, in key order.
    [[nodiscard]] std::map<std::string, std::string> section(const std::string& name) const;

  private:
    struct Entry {
        std::string value;
        mutable bool used = false;
    };
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

double parse_number(std::string_view text, const std::string& key);
std::vector<double> parse_list(std::string_view text, const std::string& key);

/// Literals such as exponential(1), gamma(2, 1), uniform(3), deterministic(1.5),
/// discrete(1:0.5, 3:0.5), pareto(0.8, 1), lognormal(0, 0.25).
ScalarDist parse_distribution(std::string_view text, const std::string& key,
                              const std::map<std::string, double>& bases = {});

/// Builds the pair model described by the [model] section.
PairModel build_model(const Config& config);

}  // namespace immig
