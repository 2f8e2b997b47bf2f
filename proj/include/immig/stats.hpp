#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace immig {

/// A bag of scalar draws plus provenance.
struct EmpiricalSample {
    std::vector<double> values;
    std::string model_id;
    double parameter = 0.0;  // t or u the draws belong to
    std::uint64_t seed = 0;

    EmpiricalSample() = default;
    explicit EmpiricalSample(std::vector<double> v, std::string id = {}, double param = 0.0, std::uint64_t s = 0);

    [[nodiscard]] std::size_t size() const { return values.size(); }
    [[nodiscard]] double mean() const;
    [[nodiscard]] double variance() const;  // unbiased
    [[nodiscard]] double standard_error() const;
    [[nodiscard]] bool has_ties() const;
};

struct KsResult {
    double stat = 0.0;
    double null_quantile = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;
    bool tie_aware = false;  // samples contained repeated values

    [[nodiscard]] bool below_null() const { return stat < null_quantile; }
};

/// c(alpha) of the limiting Kolmogorov law: P{K > c} = alpha.
double kolmogorov_quantile(double alpha);
/// P{K <= x} for the limiting Kolmogorov distribution.
double kolmogorov_cdf(double x);

/// Two-sample KS statistic sup |F_a - F_b|, evaluated on the union of the
/// jump points of both empirical CDFs (all copies of a tied value are
/// consumed before the gap is measured). The null quantile is asymptotic.
KsResult ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b, double alpha = 0.01);

/// One-sample KS against a continuous CDF.
KsResult ks_one_sample(const EmpiricalSample& a, const std::function<double(double)>& cdf, double alpha = 0.01);

/// Row-major cloud of `dim`-dimensional points.
struct PointCloud {
    std::size_t dim = 1;
    std::vector<double> coords;

    [[nodiscard]] std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
    [[nodiscard]] std::span<const double> point(std::size_t i) const { return {coords.data() + i * dim, dim}; }
};

/// Energy distance 2 E|X-Y| - E|X-X'| - E|Y-Y'| with V-statistic means.
double energy_distance(const PointCloud& a, const PointCloud& b);

struct EnergyTest {
    double stat = 0.0;
    double perm_quantile = 0.0;  // (1-alpha) quantile under label permutation
    std::size_t permutations = 0;
    std::size_t n = 0;
    std::size_t m = 0;

    [[nodiscard]] bool below_null() const { return stat < perm_quantile; }
};

/// Energy distance with a permutation null; deterministic for a given seed.
EnergyTest energy_permutation_test(const PointCloud& a, const PointCloud& b, std::size_t permutations,
                                   std::uint64_t seed, double alpha = 0.01);

/// Total variation distance between an empirical pmf of integer-valued draws and a reference pmf.
double total_variation_to_pmf(std::span<const double> draws, const std::function<double(long)>& pmf);

}  // namespace immig
