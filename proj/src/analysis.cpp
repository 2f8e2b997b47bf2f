#include "immig/analysis.hpp"

#include "immig/errors.hpp"
#include "immig/parallel.hpp"
#include "immig/renewal.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace immig {

namespace {

// Per-t prelimit samples draw from streams prelimit_stream + t_index.
constexpr std::uint64_t prelimit_stream = std::uint64_t{1} << 32;

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double sup_over(std::span<const double> row, std::size_t from, std::size_t count) {
    double m = -infinity;
    for (std::size_t j = from; j < from + count; ++j) m = std::max(m, row[j]);
    return m;
}

double trapezoid(std::span<const double> row, std::span<const double> grid, std::size_t from) {
    double total = 0.0;
    for (std::size_t j = 1; j < grid.size(); ++j)
        total += 0.5 * (row[from + j] + row[from + j - 1]) * (grid[j] - grid[j - 1]);
    return total;
}

struct Moments {
    double mean = 0.0;
    double se = 0.0;
};

Moments moments(std::span<const double> v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double var = v.size() > 1 ? ss / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

std::string number(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

EmpiricalSample GridSample::column(std::size_t j) const {
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r.at(j));
    return EmpiricalSample(std::move(v), {}, u_grid.at(j));
}

PointCloud GridSample::cloud(std::size_t max_rows) const {
    PointCloud pc;
    pc.dim = u_grid.size();
    const std::size_t n = std::min(max_rows, rows.size());
    pc.coords.reserve(n * pc.dim);
    for (std::size_t i = 0; i < n; ++i) pc.coords.insert(pc.coords.end(), rows[i].begin(), rows[i].end());
    return pc;
}

GridSample sample_prelimit(const PairModel& model, double t, std::span<const double> u_grid, std::size_t n,
                           std::uint64_t seed, unsigned workers, std::uint64_t stream) {
    if (u_grid.empty()) throw ArgumentError("sample_prelimit: empty u grid");
    const double horizon = std::max(0.0, t + *std::max_element(u_grid.begin(), u_grid.end()));
    GridSample g;
    g.u_grid.assign(u_grid.begin(), u_grid.end());
    g.rows = parallel_map<std::vector<double>>(n, workers, [&](std::size_t i) {
        Rng rng = Rng::substream(seed, stream, i);
        const RenewalRealization walk = simulate_walk(model, horizon, rng);
        return walk.eval_immigration(t, u_grid);
    });
    return g;
}

GridSample sample_stationary(const PairModel& model, double c, std::span<const double> u_grid, std::size_t n,
                             std::uint64_t seed, unsigned workers, std::uint64_t stream) {
    if (u_grid.empty()) throw ArgumentError("sample_stationary: empty u grid");
    if (max_abs(u_grid) > 0.5 * c)
        throw RangeError("sample_stationary: grid reaches beyond c/2; enlarge the truncation radius c");
    GridSample g;
    g.u_grid.assign(u_grid.begin(), u_grid.end());
    g.rows = parallel_map<std::vector<double>>(n, workers, [&](std::size_t i) {
        Rng rng = Rng::substream(seed, stream, i);
        const StationaryWindow w = sample_window(model, c, rng);
        return eval_stationary(w, u_grid);
    });
    return g;
}

double equilibrium_cdf(const ScalarDist& xi, double x) {
    if (x <= 0.0) return 0.0;
    std::vector<double> cuts{0.0};
    for (const auto& a : xi.atoms())
        if (a.approx() < x) cuts.push_back(a.approx());
    cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i + 1] > cuts[i])) continue;
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        if (!xi.has_continuous_part()) {
            total += xi.survival(mid) * (cuts[i + 1] - cuts[i]);
            continue;
        }
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double y) { return xi.survival(y); }, cuts[i], cuts[i + 1], 15, 1e-13);
    }
    return std::min(1.0, total / xi.mean());
}

// ---------------------------------------------------------------------------

bool nonincreasing_to_floor(const std::vector<double>& values, double floor, double band) {
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] <= values[i - 1] || values[i] <= floor * band)) return false;
    return true;
}

ConvergenceReport convergence_experiment(const PairModel& model, const ConvergenceSettings& s) {
    if (s.t_list.empty()) throw ArgumentError("convergence_experiment: t_list is empty");
    for (std::size_t i = 1; i < s.t_list.size(); ++i)
        if (!(s.t_list[i] > s.t_list[i - 1])) throw ArgumentError("convergence_experiment: t_list must increase");
    if (s.u_list.empty()) throw ArgumentError("convergence_experiment: u_list is empty");
    if (s.n < 1000) throw ArgumentError("convergence_experiment: N must be at least 1000");
    if (s.floor_pairs == 0) throw ArgumentError("convergence_experiment: floor_pairs must be positive");
    if (s.functional_grid.size() == 1) throw ArgumentError("convergence_experiment: functional grid needs 2+ points");
    for (std::size_t i = 1; i < s.functional_grid.size(); ++i)
        if (!(s.functional_grid[i] > s.functional_grid[i - 1]))
            throw ArgumentError("convergence_experiment: functional grid must increase");

    std::vector<double> all_u = s.u_list;
    all_u.insert(all_u.end(), s.functional_grid.begin(), s.functional_grid.end());
    if (max_abs(all_u) > 0.5 * s.c) throw ArgumentError("convergence_experiment: max |u| exceeds c/2");

    ConvergenceReport report;
    report.t_list = s.t_list;
    report.u_list = s.u_list;
    report.n = s.n;
    report.floor_band = s.floor_band;
    report.floor_pairs = s.floor_pairs;
    report.null_quantile = kolmogorov_quantile(s.alpha) * std::sqrt(2.0 / static_cast<double>(s.n));

    const auto [u_min, u_max] = std::minmax_element(all_u.begin(), all_u.end());
    report.tail = truncation_tail(model, s.c, {*u_min, *u_max}, s.tail_samples, s.seed, s.workers);
    const double certified = report.tail.estimate + 3.0 * report.tail.se;
    if (certified > s.tail_tolerance)
        throw NumericalError("truncation tail " + number(certified) + " exceeds tolerance " +
                             number(s.tail_tolerance) + "; enlarge experiment.c");

    const std::size_t nu = s.u_list.size();
    const std::size_t ng = s.functional_grid.size();
    const bool functionals = ng > 0;

    // Scalar statistics of one row: the marginals, then sup and integral over the grid.
    auto statistic = [&](const GridSample& g, std::size_t which) {
        std::vector<double> v;
        v.reserve(g.rows.size());
        for (const auto& row : g.rows) {
            if (which < nu) v.push_back(row[which]);
            else if (which == nu) v.push_back(sup_over(row, nu, ng));
            else v.push_back(trapezoid(row, s.functional_grid, nu));
        }
        return EmpiricalSample(std::move(v));
    };
    const std::size_t n_stats = nu + (functionals ? 2 : 0);

    // Batch b of every t is compared with stationary sample A_b, the floor with
    // the pair (A_b, B_b); both are averaged over the batches.
    const std::size_t batches = s.floor_pairs;
    auto stats_of = [&](const GridSample& g) {
        std::vector<EmpiricalSample> out;
        for (std::size_t k = 0; k < n_stats; ++k) out.push_back(statistic(g, k));
        return out;
    };
    auto subsample_cloud = [&](const GridSample& g) {
        PointCloud cloud;
        cloud.dim = nu;
        const std::size_t m = std::min(s.energy_subsample, g.rows.size());
        for (std::size_t i = 0; i < m; ++i)
            cloud.coords.insert(cloud.coords.end(), g.rows[i].begin(), g.rows[i].begin() + static_cast<long>(nu));
        return cloud;
    };

    std::vector<std::vector<EmpiricalSample>> reference;
    PointCloud ref_cloud;
    std::vector<double> floors(n_stats, 0.0);
    for (std::size_t b = 0; b < batches; ++b) {
        const GridSample a = sample_stationary(model, s.c, all_u, s.n, s.seed, s.workers, streams::floor + 2 * b);
        if (b == 0) ref_cloud = subsample_cloud(a);
        reference.push_back(stats_of(a));
        const auto other = stats_of(
            sample_stationary(model, s.c, all_u, s.n, s.seed, s.workers, streams::floor + 2 * b + 1));
        for (std::size_t k = 0; k < n_stats; ++k) floors[k] += ks_two_sample(reference[b][k], other[k], s.alpha).stat;
    }
    for (double& f : floors) f /= static_cast<double>(batches);

    std::vector<StatisticTrend> trends(n_stats);
    for (std::size_t k = 0; k < n_stats; ++k) {
        trends[k].name = k < nu ? "u=" + number(s.u_list[k]) : (k == nu ? "sup" : "integral");
        trends[k].floor = floors[k];
    }

    for (std::size_t ti = 0; ti < s.t_list.size(); ++ti) {
        std::vector<KsResult> mean_ks(n_stats);
        for (std::size_t b = 0; b < batches; ++b) {
            const GridSample pre = sample_prelimit(model, s.t_list[ti], all_u, s.n, s.seed, s.workers,
                                                   prelimit_stream + ti * batches + b);
            if (b == 0)
                report.energy.push_back(energy_permutation_test(subsample_cloud(pre), ref_cloud, s.permutations,
                                                                s.seed * 1'000'003ULL + ti, s.alpha));
            const auto pre_stats = stats_of(pre);
            for (std::size_t k = 0; k < n_stats; ++k) {
                const KsResult ks = ks_two_sample(pre_stats[k], reference[b][k], s.alpha);
                mean_ks[k].stat += ks.stat / static_cast<double>(batches);
                mean_ks[k].null_quantile = ks.null_quantile;
                mean_ks[k].n = ks.n;
                mean_ks[k].m = ks.m;
                mean_ks[k].tie_aware = mean_ks[k].tie_aware || ks.tie_aware;
            }
        }
        for (std::size_t k = 0; k < n_stats; ++k) trends[k].ks.push_back(mean_ks[k]);
    }

    for (auto& trend : trends) {
        std::vector<double> stats;
        for (const auto& ks : trend.ks) stats.push_back(ks.stat);
        trend.nonincreasing_to_floor = nonincreasing_to_floor(stats, trend.floor, s.floor_band);
        trend.final_below_band = stats.back() < s.floor_band * trend.floor;
    }
    report.marginals.assign(trends.begin(), trends.begin() + static_cast<long>(nu));
    report.functionals.assign(trends.begin() + static_cast<long>(nu), trends.end());
    return report;
}

// ---------------------------------------------------------------------------

MeanCheck mean_check(const PairModel& model, double t_big, std::size_t n, std::uint64_t seed, unsigned workers) {
    if (n < 2) throw ArgumentError("mean_check: need at least two replicas");
    MeanCheck r;
    double integral = 0.0, integral_se = 0.0;
    if (model.meta().mark_integral) {
        integral = *model.meta().mark_integral;
    } else {
        const DriReport dri = dri_diagnostic(model, 1.0, 16, 2000, seed, workers);
        if (dri.verdict == DriVerdict::DivergentEvidence)
            throw DiagnosticError("mean_check: the dRi diagnostic reports divergent evidence; see `diagnose`");
        const auto values = parallel_map<double>(n, workers, [&](std::size_t i) {
            Rng rng = Rng::substream(seed, streams::pairs, i);
            return model.sample_pair(rng).mark.integral();
        });
        for (double v : values)
            if (!std::isfinite(v)) throw DiagnosticError("mean_check: a mark has a divergent integral; see `diagnose`");
        const Moments mo = moments(values);
        integral = mo.mean;
        integral_se = mo.se;
        r.analytic_closed_form = false;
    }
    if (!std::isfinite(integral))
        throw DiagnosticError("mean_check: the integral of E X diverges, no stationary mean exists; see `diagnose`");

    const double zero = 0.0;
    const GridSample g = sample_prelimit(model, t_big, std::span<const double>(&zero, 1), n, seed, workers);
    std::vector<double> values;
    values.reserve(n);
    for (const auto& row : g.rows) values.push_back(row[0]);
    const Moments mo = moments(values);

    r.empirical = mo.mean;
    r.empirical_se = mo.se;
    r.analytic = integral / model.mu();
    r.analytic_se = integral_se / model.mu();
    r.unnormalized = integral;
    const double se = std::hypot(r.empirical_se, r.analytic_se);
    r.agrees = std::abs(r.empirical - r.analytic) <= 3.0 * se;
    r.agrees_unnormalized = std::abs(r.empirical - r.unnormalized) <= 3.0 * std::hypot(r.empirical_se, integral_se);
    return r;
}

// ---------------------------------------------------------------------------

std::string to_string(DriVerdict v) {
    switch (v) {
        case DriVerdict::SummableEvidence: return "summable-evidence";
        case DriVerdict::DivergentEvidence: return "divergent-evidence";
        case DriVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

struct LineFit {
    double slope = 0.0;
    double rss = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - my - f.slope * (x[i] - mx);
        f.rss += e * e;
    }
    return f;
}

}  // namespace

DriReport dri_diagnostic(const PairModel& model, double eps, std::size_t k_max, std::size_t n, std::uint64_t seed,
                         unsigned workers, double delta) {
    if (!(eps > 0.0)) throw ArgumentError("dri_diagnostic: eps must be positive");
    if (k_max < 8) throw ArgumentError("dri_diagnostic: K must be at least 8");
    if (n < 1000) throw ArgumentError("dri_diagnostic: N must be at least 1000");

    struct Row {
        std::vector<double> s;
        bool exact = true;
    };
    const auto rows = parallel_map<Row>(n, workers, [&](std::size_t i) {
        Rng rng = Rng::substream(seed, streams::diagnostic, i);
        const MarkedDraw d = model.sample_pair(rng);
        Row row;
        row.s.resize(k_max + 1);
        for (std::size_t k = 0; k <= k_max; ++k) {
            const double lo = static_cast<double>(k) * eps;
            const SupBound b = d.mark.sup_abs(lo, lo + eps);
            row.s[k] = std::min(1.0, b.value);
            row.exact = row.exact && b.exact;
        }
        return row;
    });

    DriReport r;
    r.eps = eps;
    r.s.assign(k_max + 1, 0.0);
    r.se.assign(k_max + 1, 0.0);
    std::vector<double> sq(k_max + 1, 0.0);
    for (const auto& row : rows) {
        r.exact_sup = r.exact_sup && row.exact;
        for (std::size_t k = 0; k <= k_max; ++k) {
            r.s[k] += row.s[k];
            sq[k] += row.s[k] * row.s[k];
        }
    }
    const double nn = static_cast<double>(n);
    double running = 0.0;
    for (std::size_t k = 0; k <= k_max; ++k) {
        r.s[k] /= nn;
        const double var = std::max(0.0, (sq[k] - nn * r.s[k] * r.s[k]) / (nn - 1.0));
        r.se[k] = std::sqrt(var / nn);
        running += r.s[k];
        r.partial_sums.push_back(running);
    }

    const std::size_t first = k_max - k_max / 2;
    r.exact_zero_tail = std::all_of(r.s.begin() + static_cast<long>(first), r.s.end(), [](double v) { return v == 0.0; });
    if (r.exact_zero_tail) {
        r.verdict = DriVerdict::SummableEvidence;
        r.note = "s_k is exactly zero over the last K/2 windows";
        return r;
    }

    r.max_tail_ratio = 0.0;
    for (std::size_t k = first; k < k_max; ++k) {
        const double ratio = r.s[k] > 0.0 ? r.s[k + 1] / r.s[k] : (r.s[k + 1] > 0.0 ? infinity : 0.0);
        r.max_tail_ratio = std::max(r.max_tail_ratio, ratio);
    }

    std::vector<double> log_k, lin_k, log_s;
    for (std::size_t k = std::max<std::size_t>(first, 1); k <= k_max; ++k) {
        if (r.s[k] <= 0.0) continue;
        log_k.push_back(std::log(static_cast<double>(k)));
        lin_k.push_back(static_cast<double>(k));
        log_s.push_back(std::log(r.s[k]));
    }
    if (log_s.size() >= 3) {
        const LineFit power = least_squares(log_k, log_s);
        const LineFit geometric = least_squares(lin_k, log_s);
        r.tail_log_slope = power.slope;
        if (r.max_tail_ratio < 1.0 - delta) {
            r.verdict = DriVerdict::SummableEvidence;
            r.note = "tail ratios of s_k stay below 1 - delta";
        } else if (power.slope >= -1.0 && power.rss <= geometric.rss * (1.0 + 1e-9) + 1e-12) {
            r.verdict = DriVerdict::DivergentEvidence;
            r.note = "s_k decays like k^" + number(power.slope) + ", not faster than 1/k";
        } else {
            r.note = "tail neither geometric nor heavier than 1/k within K windows";
        }
    } else {
        r.note = "too few nonzero tail terms";
    }
    if (!r.exact_sup) r.note += "; suprema are envelope upper bounds";
    r.note += "; diagnostic evidence only, not a proof of direct Riemann integrability";
    return r;
}

// ---------------------------------------------------------------------------

std::string to_string(ClashVerdict v) {
    switch (v) {
        case ClashVerdict::Pass: return "pass";
        case ClashVerdict::Fail: return "fail";
        case ClashVerdict::Vacuous: return "vacuous";
    }
    return "vacuous";
}

namespace {

std::vector<ExactValue> difference_set(const std::vector<ExactValue>& a, const std::vector<ExactValue>& b) {
    std::vector<ExactValue> out;
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(x - y);
    return unique_sorted(std::move(out));
}

std::vector<ExactValue> intersect(const std::vector<ExactValue>& sorted_a, const std::vector<ExactValue>& b) {
    std::vector<ExactValue> out;
    for (const auto& x : b)
        if (std::binary_search(sorted_a.begin(), sorted_a.end(), x)) out.push_back(x);
    return unique_sorted(std::move(out));
}

}  // namespace

ClashReport clash_check(const PairModel& model, const ExactValue& bound) {
    const ModelMeta& meta = model.meta();
    if (!meta.jumps) throw ConfigError("clash_check: model.D (jump locations of X) is not declared");
    if (!meta.shifted_jumps) throw ConfigError("clash_check: model.D_xi (jump locations of X(xi + .)) is not declared");
    if (!(ExactValue(0) < bound)) throw ArgumentError("clash_check: bound T must be positive");

    ClashReport r;
    r.bound = bound;
    r.delta = difference_set(meta.shifted_jumps->atoms, meta.jumps->atoms);
    r.zero_in_delta = std::binary_search(r.delta.begin(), r.delta.end(), ExactValue(0));
    r.semigroup = semigroup_enumerate(meta.lattice, bound);

    if (meta.lattice.empty()) {
        r.verdict = ClashVerdict::Vacuous;
        r.notes.push_back("xi has no discrete component; the condition holds automatically");
        if (r.zero_in_delta) r.notes.push_back("informational: 0 lies in the difference set of jump locations");
        return r;
    }

    r.intersection = intersect(r.semigroup, r.delta);
    bool pass = r.intersection.empty();
    for (const auto& d : r.delta)
        if (bound < d) {
            r.notes.push_back("bound T = " + bound.str() + " is below difference atom " + d.str() +
                              "; enlarge T to cover every atom");
            break;
        }
    if (meta.independent) {
        r.independent_route = true;
        r.delta_prime = difference_set(meta.jumps->atoms, meta.jumps->atoms);
        r.intersection_prime = intersect(r.semigroup, r.delta_prime);
        const bool simple = r.intersection_prime.size() == 1 && r.intersection_prime.front().is_zero();
        if (simple && !pass) r.notes.push_back("passed through the independent-model condition only");
        pass = pass || simple;
    }
    if (meta.jumps->continuous_part || meta.shifted_jumps->continuous_part)
        r.notes.push_back("diffuse jump locations carry no atoms and do not enter the difference set");
    r.verdict = pass ? ClashVerdict::Pass : ClashVerdict::Fail;
    return r;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double perpetuity_truncation = 1e-12;
constexpr double tie_resolution = 1e-9;

double discount_rate(const PairModel& model) {
    if (model.meta().kind != ModelKind::Perpetuity || !model.meta().decay_rate)
        throw ConfigError("perpetuity fixed point requires model.kind = perpetuity");
    return *model.meta().decay_rate;
}

// Truncation noise (~1e-12) must not split values that agree in law exactly.
EmpiricalSample snapped(std::vector<double> v) {
    for (double& x : v) x = std::floor(x / tie_resolution) * tie_resolution;
    return EmpiricalSample(std::move(v));
}

}  // namespace

double sample_perpetuity_limit(const PairModel& model, Rng& rng) {
    const double a = discount_rate(model);
    double s = 0.0, total = 0.0;
    for (;;) {
        const MarkedDraw d = model.sample_pair(rng);
        s += d.xi;
        total += d.mark.eval(s);  // eta_k exp(-a S_k)
        if (std::exp(-a * s) < perpetuity_truncation) return total;
    }
}

FixedPointResult perpetuity_fixed_point_test(const PairModel& model, std::size_t n, std::uint64_t seed,
                                             unsigned workers, double c, double alpha) {
    const double a = discount_rate(model);
    if (n < 2) throw ArgumentError("perpetuity_fixed_point_test: need at least two replicas");
    const DriReport dri = dri_diagnostic(model, 1.0, 16, 2000, seed, workers);
    if (dri.verdict == DriVerdict::DivergentEvidence)
        throw DiagnosticError("perpetuity_fixed_point_test: the dRi diagnostic reports divergent evidence");

    struct Row {
        double a_inf, fixed_rhs, stationary, decomposition;
    };
    const auto rows = parallel_map<Row>(n, workers, [&](std::size_t i) {
        Row row{};
        Rng lhs_rng = Rng::substream(seed, streams::perpetuity, 4 * i);
        row.a_inf = sample_perpetuity_limit(model, lhs_rng);

        Rng rhs_rng = Rng::substream(seed, streams::perpetuity, 4 * i + 1);
        const MarkedDraw d = model.sample_pair(rhs_rng);
        row.fixed_rhs = d.mark.eval(d.xi) + std::exp(-a * d.xi) * sample_perpetuity_limit(model, rhs_rng);

        Rng window_rng = Rng::substream(seed, streams::perpetuity, 4 * i + 2);
        row.stationary = eval_stationary(sample_window(model, c, window_rng), 0.0);

        Rng decomp_rng = Rng::substream(seed, streams::perpetuity, 4 * i + 3);
        const double u = decomp_rng.uniform();
        const MarkedDraw zero = model.size_biased_pair(decomp_rng);
        const double s0 = u * zero.xi;
        row.decomposition = zero.mark.eval(s0) + std::exp(-a * s0) * sample_perpetuity_limit(model, decomp_rng);
        return row;
    });

    std::vector<double> lhs, rhs, stat, decomp;
    for (const auto& r : rows) {
        lhs.push_back(r.a_inf);
        rhs.push_back(r.fixed_rhs);
        stat.push_back(r.stationary);
        decomp.push_back(r.decomposition);
    }
    FixedPointResult res;
    res.n = n;
    res.a_inf_mean = std::accumulate(lhs.begin(), lhs.end(), 0.0) / static_cast<double>(n);
    res.a_inf_min = *std::min_element(lhs.begin(), lhs.end());
    res.a_inf_max = *std::max_element(lhs.begin(), lhs.end());
    res.fixed_point = ks_two_sample(snapped(lhs), snapped(rhs), alpha);
    res.stationary_decomposition = ks_two_sample(snapped(stat), snapped(decomp), alpha);
    return res;
}

}  // namespace immig
