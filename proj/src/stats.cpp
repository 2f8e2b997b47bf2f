#include "immig/stats.hpp"

#include "immig/errors.hpp"
#include "immig/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace immig {

EmpiricalSample::EmpiricalSample(std::vector<double> v, std::string id, double param, std::uint64_t s)
    : values(std::move(v)), model_id(std::move(id)), parameter(param), seed(s) {
    for (double x : values)
        if (!std::isfinite(x)) throw ArgumentError("empirical sample values must be finite");
}

double EmpiricalSample::mean() const {
    if (values.empty()) throw ArgumentError("mean of an empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double EmpiricalSample::variance() const {
    if (values.size() < 2) return 0.0;
    const double m = mean();
    double ss = 0.0;
    for (double x : values) ss += (x - m) * (x - m);
    return ss / static_cast<double>(values.size() - 1);
}

double EmpiricalSample::standard_error() const {
    return std::sqrt(variance() / static_cast<double>(values.size()));
}

bool EmpiricalSample::has_ties() const {
    std::vector<double> s = values;
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) != s.end();
}

double kolmogorov_cdf(double x) {
    if (x <= 0.0) return 0.0;
    if (x < 1.0) {
        // Theta-function form converges fast for small x.
        const double c = std::sqrt(2.0 * M_PI) / x;
        double s = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const double term = std::exp(-(2.0 * k - 1) * (2.0 * k - 1) * M_PI * M_PI / (8.0 * x * x));
            s += term;
        }
        return c * s;
    }
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        s += (k % 2 ? 1.0 : -1.0) * term;
        if (term < 1e-18) break;
    }
    return 1.0 - 2.0 * s;
}

double kolmogorov_quantile(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("KS level alpha must be in (0, 1)");
    double lo = 0.0, hi = 5.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (kolmogorov_cdf(mid) < 1.0 - alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

KsResult ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b, double alpha) {
    if (a.values.empty() || b.values.empty()) throw ArgumentError("ks_two_sample: empty sample");
    std::vector<double> x = a.values, y = b.values;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    bool ties = false;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        std::size_t run = 0;
        while (i < x.size() && x[i] == v) ++i, ++run;
        while (j < y.size() && y[j] == v) ++j, ++run;
        ties = ties || run > 1;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    // Once one sample is exhausted the gap only shrinks, but a remaining tie run still counts as ties.
    ties = ties || std::adjacent_find(x.begin() + static_cast<long>(i), x.end()) != x.end() ||
           std::adjacent_find(y.begin() + static_cast<long>(j), y.end()) != y.end();
    KsResult r;
    r.stat = d;
    r.n = x.size();
    r.m = y.size();
    r.null_quantile = kolmogorov_quantile(alpha) * std::sqrt((n + m) / (n * m));
    r.tie_aware = ties;
    return r;
}

KsResult ks_one_sample(const EmpiricalSample& a, const std::function<double(double)>& cdf, double alpha) {
    if (a.values.empty()) throw ArgumentError("ks_one_sample: empty sample");
    std::vector<double> x = a.values;
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    KsResult r;
    r.stat = d;
    r.n = x.size();
    r.null_quantile = kolmogorov_quantile(alpha) / std::sqrt(n);
    r.tie_aware = std::adjacent_find(x.begin(), x.end()) != x.end();
    return r;
}

namespace {

double euclid(std::span<const double> p, std::span<const double> q) {
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) s += (p[k] - q[k]) * (p[k] - q[k]);
    return std::sqrt(s);
}

// Condensed upper-triangular distance matrix of the pooled sample.
std::vector<double> pooled_distances(const PointCloud& a, const PointCloud& b) {
    const std::size_t n = a.size(), total = n + b.size();
    auto point = [&](std::size_t i) { return i < n ? a.point(i) : b.point(i - n); };
    std::vector<double> dist;
    dist.reserve(total * (total - 1) / 2);
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = i + 1; j < total; ++j) dist.push_back(euclid(point(i), point(j)));
    return dist;
}

double energy_from_labels(const std::vector<double>& dist, const std::vector<char>& in_a, std::size_t n,
                          std::size_t m) {
    const std::size_t total = in_a.size();
    double within_a = 0.0, within_b = 0.0, between = 0.0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < total; ++i) {
        const char li = in_a[i];
        for (std::size_t j = i + 1; j < total; ++j, ++idx) {
            const double d = dist[idx];
            if (li != in_a[j]) between += d;
            else if (li) within_a += d;
            else within_b += d;
        }
    }
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    // V-statistics: ordered pairs, diagonal included as zeros.
    return 2.0 * between / (nn * mm) - 2.0 * within_a / (nn * nn) - 2.0 * within_b / (mm * mm);
}

void check_clouds(const PointCloud& a, const PointCloud& b) {
    if (a.dim != b.dim) throw ArgumentError("energy distance: dimension mismatch");
    if (a.size() == 0 || b.size() == 0) throw ArgumentError("energy distance: empty sample");
    if (a.coords.size() % a.dim || b.coords.size() % b.dim) throw ArgumentError("energy distance: ragged cloud");
}

}  // namespace

double energy_distance(const PointCloud& a, const PointCloud& b) {
    check_clouds(a, b);
    const std::size_t n = a.size(), m = b.size();
    double between = 0.0, within_a = 0.0, within_b = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) between += euclid(a.point(i), b.point(j));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) within_a += euclid(a.point(i), a.point(j));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) within_b += euclid(b.point(i), b.point(j));
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return std::max(0.0, 2.0 * between / (nn * mm) - 2.0 * within_a / (nn * nn) - 2.0 * within_b / (mm * mm));
}

EnergyTest energy_permutation_test(const PointCloud& a, const PointCloud& b, std::size_t permutations,
                                   std::uint64_t seed, double alpha) {
    check_clouds(a, b);
    if (permutations == 0) throw ArgumentError("energy permutation test needs permutations > 0");
    const std::size_t n = a.size(), m = b.size(), total = n + m;
    const auto dist = pooled_distances(a, b);
    std::vector<char> labels(total, 0);
    std::fill(labels.begin(), labels.begin() + static_cast<long>(n), 1);

    EnergyTest t;
    t.stat = std::max(0.0, energy_from_labels(dist, labels, n, m));
    t.permutations = permutations;
    t.n = n;
    t.m = m;

    Rng rng = Rng::substream(seed, streams::permutation, 0);
    std::vector<double> null_stats;
    null_stats.reserve(permutations);
    for (std::size_t p = 0; p < permutations; ++p) {
        for (std::size_t i = total - 1; i > 0; --i) std::swap(labels[i], labels[rng.below(i + 1)]);
        null_stats.push_back(std::max(0.0, energy_from_labels(dist, labels, n, m)));
    }
    std::sort(null_stats.begin(), null_stats.end());
    // Smallest order statistic with at least (1 - alpha) of the null mass at or below it.
    auto rank = static_cast<std::size_t>(std::ceil((1.0 - alpha) * static_cast<double>(permutations)));
    rank = std::clamp<std::size_t>(rank, 1, permutations);
    t.perm_quantile = null_stats[rank - 1];
    return t;
}

double total_variation_to_pmf(std::span<const double> draws, const std::function<double(long)>& pmf) {
    if (draws.empty()) throw ArgumentError("total variation: empty sample");
    std::map<long, double> counts;
    for (double x : draws) {
        if (x != std::floor(x)) throw ArgumentError("total variation: draws must be integer-valued");
        counts[static_cast<long>(x)] += 1.0;
    }
    const double n = static_cast<double>(draws.size());
    double tv = 0.0, covered = 0.0;
    for (const auto& [k, c] : counts) {
        const double p = pmf(k);
        tv += std::abs(c / n - p);
        covered += p;
    }
    // Reference mass on values never observed.
    tv += std::max(0.0, 1.0 - covered);
    return 0.5 * tv;
}

}  // namespace immig
