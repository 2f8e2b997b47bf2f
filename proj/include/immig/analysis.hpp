#pragma once

#include "immig/exact.hpp"
#include "immig/models.hpp"
#include "immig/stationary.hpp"
#include "immig/stats.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace immig {

// ---------------------------------------------------------------------------
// Sampling helpers shared by the experiments and the CLI.

/// Rows of Y(t + u_j), one realization per replica.
struct GridSample {
    std::vector<double> u_grid;
    std::vector<std::vector<double>> rows;  // rows[replica][j]

    [[nodiscard]] EmpiricalSample column(std::size_t j) const;
    [[nodiscard]] PointCloud cloud(std::size_t max_rows = SIZE_MAX) const;
};

GridSample sample_prelimit(const PairModel& model, double t, std::span<const double> u_grid, std::size_t n,
                           std::uint64_t seed, unsigned workers = 1, std::uint64_t stream = streams::walk);
GridSample sample_stationary(const PairModel& model, double c, std::span<const double> u_grid, std::size_t n,
                             std::uint64_t seed, unsigned workers = 1, std::uint64_t stream = streams::window);

/// Equilibrium CDF F_e(x) = (1/mu) integral_0^x P{xi > y} dy by quadrature.
double equilibrium_cdf(const ScalarDist& xi, double x);

// ---------------------------------------------------------------------------
// Convergence of finite-dimensional laws and functionals.

struct ConvergenceSettings {
    std::vector<double> t_list;
    std::vector<double> u_list;
    std::size_t n = 10'000;
    double c = 40.0;
    double alpha = 0.01;
    /// Grid carrying the functional statistics (sup and trapezoid integral);
    /// empty disables them.
    std::vector<double> functional_grid;
    std::size_t energy_subsample = 1'000;
    std::size_t permutations = 199;
    /// Independent stationary pairs for the floor; also the number of
    /// prelimit batches averaged per t.
    std::size_t floor_pairs = 32;
    double floor_band = 1.5;
    double tail_tolerance = 1e-6;
    std::size_t tail_samples = 100'000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

struct StatisticTrend {
    std::string name;            // "u=<u>", "sup", "integral"
    std::vector<KsResult> ks;    // one per t, stat averaged over the batches
    double floor = 0.0;          // mean KS between independent stationary sample pairs
    bool nonincreasing_to_floor = false;
    bool final_below_band = false;
};

struct ConvergenceReport {
    std::vector<double> t_list;
    std::vector<double> u_list;
    std::size_t n = 0;
    std::vector<StatisticTrend> marginals;   // per u
    std::vector<StatisticTrend> functionals; // sup, integral (if enabled)
    std::vector<EnergyTest> energy;          // per t, joint over u_list
    double null_quantile = 0.0;              // asymptotic KS quantile at alpha for (n, n)
    double floor_band = 1.5;
    TailEstimate tail;
    std::size_t floor_pairs = 0;
};

/// Compares (Y(t+u))_u against (Y*(u))_u for each t. Throws NumericalError
/// when the certified truncation tail exceeds settings.tail_tolerance.
ConvergenceReport convergence_experiment(const PairModel& model, const ConvergenceSettings& settings);

/// b[i+1] <= b[i] or b[i+1] <= floor * band, for every i.
bool nonincreasing_to_floor(const std::vector<double>& values, double floor, double band);

// ---------------------------------------------------------------------------

struct MeanCheck {
    double empirical = 0.0;
    double empirical_se = 0.0;
    double analytic = 0.0;      // (1/mu) E integral X
    double analytic_se = 0.0;   // nonzero when E integral X was estimated
    double unnormalized = 0.0;  // E integral X without the 1/mu factor
    bool agrees = false;             // |empirical - analytic| < 3 combined SE
    bool agrees_unnormalized = false;
    bool analytic_closed_form = true;
};

/// Mean of Y(t_big) over n realizations against (1/mu) integral_0^inf E X(s) ds.
/// DiagnosticError if the integral diverges.
MeanCheck mean_check(const PairModel& model, double t_big, std::size_t n, std::uint64_t seed, unsigned workers = 1);

// ---------------------------------------------------------------------------

enum class DriVerdict { SummableEvidence, DivergentEvidence, Inconclusive };
std::string to_string(DriVerdict v);

struct DriReport {
    double eps = 1.0;
    std::vector<double> s;     // s_k = E sup_{t in [k eps, (k+1) eps]} (|X(t)| ^ 1)
    std::vector<double> se;
    std::vector<double> partial_sums;
    double max_tail_ratio = 0.0;     // over the last K/2 terms
    double tail_log_slope = 0.0;     // slope of log s_k against log k over the last K/2 terms
    bool exact_zero_tail = false;
    bool exact_sup = true;           // false when any supremum was an envelope bound
    DriVerdict verdict = DriVerdict::Inconclusive;
    std::string note;
};

/// Evidence (never proof) about summability of unit-window suprema of |X| ^ 1.
DriReport dri_diagnostic(const PairModel& model, double eps, std::size_t k_max, std::size_t n, std::uint64_t seed,
                         unsigned workers = 1, double delta = 0.05);

// ---------------------------------------------------------------------------

enum class ClashVerdict { Pass, Fail, Vacuous };
std::string to_string(ClashVerdict v);

struct ClashReport {
    ExactValue bound;
    std::vector<ExactValue> semigroup;   // elements of <A> in [0, bound]
    std::vector<ExactValue> delta;       // D_xi - D
    std::vector<ExactValue> intersection;
    bool independent_route = false;      // independent model: <A> cap (D - D) = {0} was checked too
    std::vector<ExactValue> delta_prime;
    std::vector<ExactValue> intersection_prime;
    bool zero_in_delta = false;
    ClashVerdict verdict = ClashVerdict::Vacuous;
    std::vector<std::string> notes;
};

/// Checks that the semigroup generated by the lattice atoms of xi avoids the
/// difference set of declared jump locations. ConfigError if the model does
/// not declare its jump laws.
ClashReport clash_check(const PairModel& model, const ExactValue& bound);

// ---------------------------------------------------------------------------

struct FixedPointResult {
    KsResult fixed_point;              // A_inf vs eta e^{-a xi} + e^{-a xi} A'_inf
    KsResult stationary_decomposition; // Y*(0) vs eta0 e^{-a S*_0} + e^{-a S*_0} A_inf
    double a_inf_mean = 0.0;
    double a_inf_min = 0.0;
    double a_inf_max = 0.0;
    std::size_t n = 0;
};

/// A_inf = sum_{k>=1} eta_k exp(-a S_k), truncated once exp(-a S_k) < 1e-12.
double sample_perpetuity_limit(const PairModel& model, Rng& rng);

/// Tests the distributional fixed point of the perpetuity and the
/// representation of Y*(0) through it. Requires a perpetuity model.
FixedPointResult perpetuity_fixed_point_test(const PairModel& model, std::size_t n, std::uint64_t seed,
                                             unsigned workers = 1, double c = 40.0, double alpha = 0.01);

}  // namespace immig
