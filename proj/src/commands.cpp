#include "immig/commands.hpp"

#include "immig/analysis.hpp"
#include "immig/errors.hpp"
#include "immig/parallel.hpp"
#include "immig/renewal.hpp"
#include "immig/stationary.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace immig {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

Json num(double x) {
    if (std::isfinite(x)) return x;
    return fmt(x);
}

class Csv {
  public:
    explicit Csv(std::initializer_list<std::string> header) { row(std::vector<std::string>(header)); }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }
    [[nodiscard]] std::string str() const { return out_.str(); }

  private:
    std::ostringstream out_;
};

Json ks_json(const KsResult& ks) {
    return Json{{"ks_stat", num(ks.stat)},
                {"null_quantile", num(ks.null_quantile)},
                {"n", ks.n},
                {"m", ks.m},
                {"tie_aware", ks.tie_aware},
                {"below_null", ks.below_null()}};
}

Json tail_json(const TailEstimate& t, double c, double tolerance) {
    return Json{{"c", num(c)},
                {"estimate", num(t.estimate)},
                {"se", num(t.se)},
                {"certified_upper", num(t.estimate + 3.0 * t.se)},
                {"tolerance", num(tolerance)},
                {"samples", t.n},
                {"exact_zero", t.exact_zero}};
}

Json exact_list(const std::vector<ExactValue>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

Json header(const std::string& command, const RunSettings& run, const Config& cfg, const PairModel& model) {
    Json j;
    j["id"] = run.id;
    j["command"] = command;
    Json m;
    for (const auto& [k, v] : cfg.section("model")) m[k] = v;
    m["description"] = model.meta().name;
    m["mu"] = num(model.mu());
    j["model"] = m;
    Json e = Json::object();
    for (const auto& [k, v] : cfg.section("experiment")) e[k] = v;
    j["experiment"] = e;
    j["seeds"] = Json{{"master", run.seed}};
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void check_u_within(const std::vector<double>& u, double c, const std::string& key) {
    for (double x : u)
        if (std::abs(x) > 0.5 * c)
            throw ConfigError(key + ": |u| = " + fmt(std::abs(x)) + " exceeds c/2 = " + fmt(0.5 * c) +
                              "; enlarge experiment.c");
}

void check_nonempty(const std::vector<double>& v, const std::string& key) {
    if (v.empty()) throw ConfigError(key + " must list at least one value");
    for (double x : v)
        if (!std::isfinite(x)) throw ConfigError(key + " entries must be finite");
}

double alpha_of(const Config& cfg) {
    const double a = cfg.get_double("experiment", "alpha", 0.01);
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("experiment.alpha must lie in (0, 1)");
    return a;
}

MarkPredicate parse_predicate(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t == "always" || t == "true") return MarkPredicate::always();
    if (t.rfind("lifetime>", 0) == 0)
        return MarkPredicate::lifetime_above(parse_number(t.substr(9), "experiment.predicates"));
    if (t.rfind("amplitude(", 0) == 0 && t.back() == ')') {
        const auto bounds = parse_list(t.substr(10, t.size() - 11), "experiment.predicates");
        if (bounds.size() != 2 || !(bounds[0] < bounds[1]))
            throw ConfigError("experiment.predicates: amplitude(lo, hi) needs lo < hi");
        return MarkPredicate::amplitude_in(bounds[0], bounds[1]);
    }
    throw ConfigError("experiment.predicates: unknown predicate '" + text +
                      "' (use always, lifetime>x, amplitude(lo, hi))");
}

struct Moments {
    double mean = 0.0, se = 0.0;
};

Moments moments_of(const std::vector<double>& v) {
    const EmpiricalSample s(v);
    return {s.mean(), v.size() > 1 ? s.standard_error() : 0.0};
}

// ---------------------------------------------------------------------------

CommandOutput cmd_simulate(const Config& cfg, const RunSettings& run, const PairModel& model) {
    const double t = cfg.get_double("experiment", "t", 100.0);
    const auto u = cfg.get_list("experiment", "u_list", {0.0});
    const std::size_t n = cfg.get_count("experiment", "n", 1000);
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("experiment.t must be finite and nonnegative");
    check_nonempty(u, "experiment.u_list");
    cfg.expect_all_used();

    const GridSample g = sample_prelimit(model, t, u, n, run.seed, run.workers);
    Csv csv{"replica", "u", "value"};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < u.size(); ++j) csv.row({std::to_string(i), fmt(u[j]), fmt(g.rows[i][j])});

    Json j = header("simulate", run, cfg, model);
    Json table = Json::array();
    for (std::size_t k = 0; k < u.size(); ++k) {
        const auto m = g.column(k);
        table.push_back({{"t", num(t)}, {"u", num(u[k])}, {"mean", num(m.mean())}, {"se", num(m.standard_error())},
                         {"n", n}});
    }
    j["table"] = table;
    return {csv.str(), dump(j), run};
}

CommandOutput cmd_stationary(const Config& cfg, const RunSettings& run, const PairModel& model) {
    const double c = cfg.get_positive("experiment", "c", 40.0);
    const auto u = cfg.get_list("experiment", "u_list", {0.0});
    const std::size_t n = cfg.get_count("experiment", "n", 1000);
    const double tolerance = cfg.get_positive("experiment", "tolerance", 1e-6);
    const std::size_t tail_n = cfg.get_count("experiment", "tail_samples", 100'000);
    check_nonempty(u, "experiment.u_list");
    check_u_within(u, c, "experiment.u_list");
    cfg.expect_all_used();

    const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
    const TailEstimate tail = truncation_tail(model, c, {*lo, *hi}, tail_n, run.seed, run.workers);
    if (tail.estimate + 3.0 * tail.se > tolerance)
        throw NumericalError("truncation tail " + fmt(tail.estimate + 3.0 * tail.se) + " exceeds experiment.tolerance " +
                             fmt(tolerance) + "; enlarge experiment.c");

    const GridSample g = sample_stationary(model, c, u, n, run.seed, run.workers);
    Csv csv{"replica", "u", "value"};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < u.size(); ++j) csv.row({std::to_string(i), fmt(u[j]), fmt(g.rows[i][j])});

    Json j = header("stationary", run, cfg, model);
    Json table = Json::array();
    for (std::size_t k = 0; k < u.size(); ++k) {
        const auto m = g.column(k);
        table.push_back({{"u", num(u[k])}, {"mean", num(m.mean())}, {"se", num(m.standard_error())}, {"n", n}});
    }
    j["table"] = table;
    j["tail_certificate"] = tail_json(tail, c, tolerance);
    return {csv.str(), dump(j), run};
}

CommandOutput cmd_converge(const Config& cfg, const RunSettings& run, const PairModel& model) {
    ConvergenceSettings s;
    s.t_list = cfg.get_list("experiment", "t_list", {5, 20, 80, 320});
    s.u_list = cfg.get_list("experiment", "u_list", {0.0});
    s.n = cfg.get_count("experiment", "n", 10'000);
    s.c = cfg.get_positive("experiment", "c", 40.0);
    s.alpha = alpha_of(cfg);
    s.functional_grid = cfg.get_list("experiment", "functional_grid", {});
    s.energy_subsample = cfg.get_count("experiment", "energy_subsample", s.energy_subsample);
    s.permutations = cfg.get_count("experiment", "permutations", s.permutations);
    s.floor_pairs = cfg.get_count("experiment", "floor_pairs", s.floor_pairs);
    s.floor_band = cfg.get_positive("experiment", "floor_band", s.floor_band);
    s.tail_tolerance = cfg.get_positive("experiment", "tolerance", s.tail_tolerance);
    s.tail_samples = cfg.get_count("experiment", "tail_samples", s.tail_samples);
    const std::string require = cfg.get_string("experiment", "require", "none");
    const std::string bound = cfg.get_string("experiment", "t_bound", "100");
    s.seed = run.seed;
    s.workers = run.workers;

    check_nonempty(s.t_list, "experiment.t_list");
    check_nonempty(s.u_list, "experiment.u_list");
    for (std::size_t i = 1; i < s.t_list.size(); ++i)
        if (!(s.t_list[i] > s.t_list[i - 1])) throw ConfigError("experiment.t_list must be increasing");
    for (double t : s.t_list)
        if (t < 0.0) throw ConfigError("experiment.t_list entries must be nonnegative");
    if (s.n < 1000) throw ConfigError("experiment.n must be at least 1000");
    check_u_within(s.u_list, s.c, "experiment.u_list");
    check_u_within(s.functional_grid, s.c, "experiment.functional_grid");
    if (s.functional_grid.size() == 1) throw ConfigError("experiment.functional_grid needs at least two points");
    if (require != "none" && require != "functional")
        throw ConfigError("experiment.require: expected none or functional");
    const ExactValue t_bound = [&] {
        try {
            return ExactValue::parse(bound);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("experiment.t_bound: ") + e.what());
        }
    }();
    cfg.expect_all_used();

    Json j = header("converge", run, cfg, model);
    Json verdicts;
    if (require == "functional") {
        const ClashReport clash = clash_check(model, t_bound);
        const DriReport dri = dri_diagnostic(model, 1.0, 32, 2000, run.seed, run.workers);
        verdicts["clash_check"] = to_string(clash.verdict);
        verdicts["dri_diagnostic"] = to_string(dri.verdict);
        if (clash.verdict == ClashVerdict::Fail)
            throw DiagnosticError("clash_check fails, so the functional limit is not covered (experiment.require)");
        if (dri.verdict == DriVerdict::DivergentEvidence)
            throw DiagnosticError("dri_diagnostic reports divergent evidence (experiment.require)");
    }

    const ConvergenceReport r = convergence_experiment(model, s);

    Csv csv{"t", "u", "ks_stat", "ks_floor", "energy", "n"};
    Json table = Json::array();
    auto emit = [&](const StatisticTrend& trend, const std::string& label, std::optional<double> u) {
        for (std::size_t i = 0; i < r.t_list.size(); ++i) {
            const KsResult& ks = trend.ks[i];
            csv.row({fmt(r.t_list[i]), label, fmt(ks.stat), fmt(trend.floor), fmt(r.energy[i].stat), std::to_string(r.n)});
            Json row{{"t", num(r.t_list[i])}};
            row["u"] = u ? num(*u) : Json(label);
            row["ks_stat"] = num(ks.stat);
            row["ks_null_quantile"] = num(ks.null_quantile);
            row["ks_floor"] = num(trend.floor);
            row["tie_aware"] = ks.tie_aware;
            row["energy_stat"] = num(r.energy[i].stat);
            row["n"] = r.n;
            table.push_back(row);
        }
    };
    for (std::size_t k = 0; k < r.marginals.size(); ++k) emit(r.marginals[k], fmt(r.u_list[k]), r.u_list[k]);
    for (const auto& f : r.functionals) emit(f, f.name, std::nullopt);
    j["table"] = table;

    Json energy = Json::array();
    for (std::size_t i = 0; i < r.t_list.size(); ++i)
        energy.push_back({{"t", num(r.t_list[i])},
                          {"stat", num(r.energy[i].stat)},
                          {"perm_quantile", num(r.energy[i].perm_quantile)},
                          {"permutations", r.energy[i].permutations},
                          {"subsample", r.energy[i].n},
                          {"below_null", r.energy[i].below_null()}});
    j["energy"] = energy;

    Json trends = Json::array();
    bool all_ok = true;
    auto trend_json = [&](const StatisticTrend& t) {
        all_ok = all_ok && t.nonincreasing_to_floor && t.final_below_band;
        trends.push_back({{"statistic", t.name},
                          {"floor", num(t.floor)},
                          {"nonincreasing_to_floor", t.nonincreasing_to_floor},
                          {"final_below_band", t.final_below_band}});
    };
    for (const auto& t : r.marginals) trend_json(t);
    for (const auto& t : r.functionals) trend_json(t);
    verdicts["trends"] = trends;
    verdicts["floor_band"] = num(r.floor_band);
    verdicts["floor_pairs"] = r.floor_pairs;
    verdicts["ks_null_quantile"] = num(r.null_quantile);
    verdicts["converged"] = all_ok && r.energy.back().below_null();
    j["verdicts"] = verdicts;
    j["tail_certificate"] = tail_json(r.tail, s.c, s.tail_tolerance);
    return {csv.str(), dump(j), run};
}

CommandOutput cmd_identities(const Config& cfg, const RunSettings& run, const PairModel& model) {
    const std::size_t n = cfg.get_count("experiment", "n", 10'000);
    const double alpha = alpha_of(cfg);
    const auto ys = cfg.get_list("experiment", "straddle_y", {0.3, 1.0, infinity});
    const auto zs = cfg.get_list("experiment", "straddle_z", {0.3, 1.0, infinity});
    std::vector<MarkPredicate> predicates;
    for (const auto& p : cfg.get_items("experiment", "predicates", {"always", "lifetime>1"}))
        predicates.push_back(parse_predicate(p));
    const auto interval = cfg.get_list("experiment", "intensity_interval", {-5.0, 5.0});
    const double t_age = cfg.get_positive("experiment", "t_age", 200.0);
    const double t_big = cfg.get_positive("experiment", "t_big", 200.0);
    if (ys.empty() || zs.empty()) throw ConfigError("experiment.straddle_y and experiment.straddle_z must be nonempty");
    for (double v : ys)
        if (!(v >= 0.0)) throw ConfigError("experiment.straddle_y entries must be nonnegative");
    for (double v : zs)
        if (!(v >= 0.0)) throw ConfigError("experiment.straddle_z entries must be nonnegative");
    if (predicates.empty()) throw ConfigError("experiment.predicates must list at least one predicate");
    if (interval.size() != 2 || !(interval[0] < interval[1]) || !std::isfinite(interval[1]) ||
        !std::isfinite(interval[0]))
        throw ConfigError("experiment.intensity_interval must read lo, hi with lo < hi");
    if (!std::isfinite(t_age) || !std::isfinite(t_big)) throw ConfigError("experiment.t_age and t_big must be finite");
    cfg.expect_all_used();

    Json j = header("identities", run, cfg, model);
    Csv csv{"identity", "case", "lhs", "rhs", "se", "pass"};
    Json results;

    // Straddle identity: lhs from stationary windows, rhs from base-law draws.
    {
        struct Row {
            std::vector<double> lhs, rhs;
        };
        const std::size_t cells = ys.size() * zs.size() * predicates.size();
        const auto rows = parallel_map<Row>(n, run.workers, [&](std::size_t i) {
            Rng wr = Rng::substream(run.seed, streams::window, i);
            const StationaryWindow w = sample_window(model, 1.0, wr);
            Rng pr = Rng::substream(run.seed, streams::pairs, i);
            const MarkedDraw d = model.sample_pair(pr);
            Row row;
            row.lhs.reserve(cells);
            row.rhs.reserve(cells);
            for (double y : ys)
                for (double z : zs)
                    for (const auto& p : predicates) {
                        row.lhs.push_back(straddle_lhs(w, y, z, p));
                        row.rhs.push_back(straddle_rhs(model, d, y, z, p));
                    }
            return row;
        });
        Json table = Json::array();
        bool all = true;
        std::size_t cell = 0;
        for (double y : ys)
            for (double z : zs)
                for (const auto& p : predicates) {
                    std::vector<double> l, r;
                    for (const auto& row : rows) {
                        l.push_back(row.lhs[cell]);
                        r.push_back(row.rhs[cell]);
                    }
                    ++cell;
                    const Moments ml = moments_of(l), mr = moments_of(r);
                    const double se = std::hypot(ml.se, mr.se);
                    const double diff = std::abs(ml.mean - mr.mean);
                    const bool pass = diff <= 3.0 * se || diff == 0.0;
                    all = all && pass;
                    const std::string label = "y=" + fmt(y) + " z=" + fmt(z) + " " + p.describe();
                    csv.row({"straddle", label, fmt(ml.mean), fmt(mr.mean), fmt(se), pass ? "1" : "0"});
                    table.push_back({{"y", num(y)},
                                     {"z", num(z)},
                                     {"predicate", p.describe()},
                                     {"lhs", num(ml.mean)},
                                     {"rhs", num(mr.mean)},
                                     {"combined_se", num(se)},
                                     {"pass", pass}});
                }
        results["straddle"] = Json{{"cells", table}, {"pass", all}};
    }

    // Intensity: mean number of stationary points in the interval.
    {
        const double c = std::max(std::abs(interval[0]), std::abs(interval[1]));
        const auto counts = parallel_map<double>(n, run.workers, [&](std::size_t i) {
            Rng rng = Rng::substream(run.seed, streams::size_biased, i);
            return static_cast<double>(sample_window(model, c, rng).count_in({interval[0], interval[1]}));
        });
        const Moments m = moments_of(counts);
        const double expected = (interval[1] - interval[0]) / model.mu();
        const bool pass = std::abs(m.mean - expected) <= 3.0 * m.se;
        csv.row({"intensity", "[" + fmt(interval[0]) + " " + fmt(interval[1]) + "]", fmt(m.mean), fmt(expected),
                 fmt(m.se), pass ? "1" : "0"});
        results["intensity"] = Json{{"interval", {num(interval[0]), num(interval[1])}},
                                    {"mean_count", num(m.mean)},
                                    {"expected", num(expected)},
                                    {"se", num(m.se)},
                                    {"pass", pass}};
    }

    // Age and residual life against the equilibrium law.
    {
        struct Pair {
            double walk_age, walk_residual, window_age, window_residual;
        };
        const auto draws = parallel_map<Pair>(n, run.workers, [&](std::size_t i) {
            Rng wr = Rng::substream(run.seed, streams::walk, i);
            const auto walk = simulate_walk(model, t_age, wr);
            const auto [age, residual] = walk.age_residual_at(t_age);
            Rng sr = Rng::substream(run.seed, streams::tail, i);
            const StationaryWindow w = sample_window(model, 1.0, sr);
            return Pair{age, residual, -w.s_minus1(), w.s0()};
        });
        const auto cdf = [&](double x) { return equilibrium_cdf(model.xi_dist(), x); };
        auto column = [&](double Pair::*field) {
            std::vector<double> v;
            for (const auto& d : draws) v.push_back(d.*field);
            return EmpiricalSample(std::move(v));
        };
        Json ar;
        auto one = [&](const std::string& name, double Pair::*field) {
            const KsResult ks = ks_one_sample(column(field), cdf, alpha);
            csv.row({"age_residual", name, fmt(ks.stat), fmt(ks.null_quantile), "", ks.below_null() ? "1" : "0"});
            ar[name] = ks_json(ks);
        };
        one("walk_age", &Pair::walk_age);
        one("walk_residual", &Pair::walk_residual);
        one("stationary_age", &Pair::window_age);
        one("stationary_residual", &Pair::window_residual);
        ar["t"] = num(t_age);
        results["age_residual"] = ar;
    }

    // Stationary mean.
    try {
        const MeanCheck m = mean_check(model, t_big, n, run.seed, run.workers);
        csv.row({"mean", "t=" + fmt(t_big), fmt(m.empirical), fmt(m.analytic),
                 fmt(std::hypot(m.empirical_se, m.analytic_se)), m.agrees ? "1" : "0"});
        results["mean_check"] = Json{{"t", num(t_big)},
                                     {"empirical", num(m.empirical)},
                                     {"empirical_se", num(m.empirical_se)},
                                     {"analytic", num(m.analytic)},
                                     {"analytic_se", num(m.analytic_se)},
                                     {"analytic_closed_form", m.analytic_closed_form},
                                     {"agrees", m.agrees},
                                     {"unnormalized", num(m.unnormalized)},
                                     {"agrees_unnormalized", m.agrees_unnormalized}};
    } catch (const DiagnosticError& e) {
        results["mean_check"] = Json{{"refused", e.what()}};
    }

    j["verdicts"] = results;
    return {csv.str(), dump(j), run};
}

CommandOutput cmd_diagnose(const Config& cfg, const RunSettings& run, const PairModel& model) {
    const double eps = cfg.get_positive("experiment", "eps", 1.0);
    const std::size_t k_max = cfg.get_count("experiment", "k", 16);
    const std::size_t n = cfg.get_count("experiment", "n", 10'000);
    const std::string bound = cfg.get_string("experiment", "t_bound", "100");
    if (k_max < 8) throw ConfigError("experiment.K must be at least 8");
    if (n < 1000) throw ConfigError("experiment.n must be at least 1000");
    if (!std::isfinite(eps)) throw ConfigError("experiment.eps must be finite");
    const ExactValue t_bound = [&] {
        try {
            return ExactValue::parse(bound);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("experiment.t_bound: ") + e.what());
        }
    }();
    if (!(ExactValue(0) < t_bound)) throw ConfigError("experiment.t_bound must be positive");
    cfg.expect_all_used();

    const DriReport dri = dri_diagnostic(model, eps, k_max, n, run.seed, run.workers);
    ClashReport clash;
    try {
        clash = clash_check(model, t_bound);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(e.what()) + " (declare model.D and model.D_xi)");
    }

    Csv csv{"k", "s_k", "se", "partial_sum"};
    Json table = Json::array();
    for (std::size_t k = 0; k < dri.s.size(); ++k) {
        csv.row({std::to_string(k), fmt(dri.s[k]), fmt(dri.se[k]), fmt(dri.partial_sums[k])});
        table.push_back({{"k", k}, {"s_k", num(dri.s[k])}, {"se", num(dri.se[k])}, {"partial_sum", num(dri.partial_sums[k])}});
    }
    Json j = header("diagnose", run, cfg, model);
    j["table"] = table;
    Json v;
    v["dri"] = Json{{"verdict", to_string(dri.verdict)},
                    {"eps", num(dri.eps)},
                    {"max_tail_ratio", num(dri.max_tail_ratio)},
                    {"tail_log_slope", num(dri.tail_log_slope)},
                    {"exact_zero_tail", dri.exact_zero_tail},
                    {"exact_sup", dri.exact_sup},
                    {"note", dri.note}};
    Json cj{{"verdict", to_string(clash.verdict)},
            {"bound", clash.bound.str()},
            {"lattice", exact_list(model.meta().lattice)},
            {"semigroup_size", clash.semigroup.size()},
            {"delta", exact_list(clash.delta)},
            {"intersection", exact_list(clash.intersection)},
            {"zero_in_delta", clash.zero_in_delta},
            {"independent_route", clash.independent_route}};
    if (clash.independent_route) {
        cj["delta_prime"] = exact_list(clash.delta_prime);
        cj["intersection_prime"] = exact_list(clash.intersection_prime);
    }
    cj["notes"] = clash.notes;
    v["clash"] = cj;
    j["verdicts"] = v;
    return {csv.str(), dump(j), run};
}

CommandOutput cmd_perpetuity(const Config& cfg, const RunSettings& run, const PairModel& model) {
    const std::size_t n = cfg.get_count("experiment", "n", 10'000);
    const double c = cfg.get_positive("experiment", "c", 40.0);
    const double alpha = alpha_of(cfg);
    if (model.meta().kind != ModelKind::Perpetuity) throw ConfigError("model.kind must be perpetuity for perpetuity-fp");
    cfg.expect_all_used();

    const FixedPointResult r = perpetuity_fixed_point_test(model, n, run.seed, run.workers, c, alpha);
    Csv csv{"comparison", "ks_stat", "null_quantile", "n", "below_null"};
    csv.row({"fixed_point", fmt(r.fixed_point.stat), fmt(r.fixed_point.null_quantile), std::to_string(r.n),
             r.fixed_point.below_null() ? "1" : "0"});
    csv.row({"stationary_decomposition", fmt(r.stationary_decomposition.stat),
             fmt(r.stationary_decomposition.null_quantile), std::to_string(r.n),
             r.stationary_decomposition.below_null() ? "1" : "0"});
    Json j = header("perpetuity-fp", run, cfg, model);
    j["verdicts"] = Json{{"fixed_point", ks_json(r.fixed_point)},
                         {"stationary_decomposition", ks_json(r.stationary_decomposition)},
                         {"a_inf", Json{{"mean", num(r.a_inf_mean)}, {"min", num(r.a_inf_min)}, {"max", num(r.a_inf_max)}}}};
    return {csv.str(), dump(j), run};
}

using Handler = std::function<CommandOutput(const Config&, const RunSettings&, const PairModel&)>;

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> h{
        {"simulate", cmd_simulate},     {"stationary", cmd_stationary}, {"converge", cmd_converge},
        {"identities", cmd_identities}, {"diagnose", cmd_diagnose},     {"perpetuity-fp", cmd_perpetuity},
    };
    return h;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("run.output_dir: cannot write " + path.string());
    out << content;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"simulate", "stationary", "converge",
                                                "identities", "diagnose", "perpetuity-fp"};
    return names;
}

RunSettings read_run_settings(const Config& cfg, const std::string& command) {
    RunSettings r;
    r.seed = cfg.get_u64("run", "seed", 1);
    const std::size_t workers = cfg.get_count("run", "workers", 1);
    if (workers > 1024) throw ConfigError("run.workers must not exceed 1024");
    r.workers = static_cast<unsigned>(workers);
    r.id = cfg.get_string("run", "id", command);
    if (const auto dir = cfg.take("run", "output_dir"); dir && !dir->empty()) r.output_dir = *dir;
    else if (const char* env = std::getenv("IMMIG_OUTPUT_DIR"); env && *env) r.output_dir = env;
    else r.output_dir = "immig-out";
    return r;
}

CommandOutput execute_command(const std::string& command, const Config& cfg) {
    const auto it = handlers().find(command);
    if (it == handlers().end()) throw ConfigError("unknown command '" + command + "'");
    const RunSettings run = read_run_settings(cfg, command);
    const PairModel model = build_model(cfg);
    return it->second(cfg, run, model);
}

int run_command(const std::string& command, const Config& cfg, std::ostream& err) {
    try {
        const CommandOutput out = execute_command(command, cfg);
        std::filesystem::create_directories(out.run.output_dir);
        write_file(out.run.output_dir / (command + ".csv"), out.csv);
        write_file(out.run.output_dir / (command + ".json"), out.json);
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const ArgumentError& e) {
        err << "invalid experiment setting: " << e.what() << '\n';
        return exit_config;
    } catch (const RangeError& e) {
        err << "invalid experiment setting: " << e.what() << '\n';
        return exit_config;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const DiagnosticError& e) {
        err << "diagnostic failure: " << e.what() << '\n';
        return exit_diagnostic;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "run.output_dir: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
}

}  // namespace immig
