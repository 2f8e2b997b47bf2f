#pragma once

#include "immig/models.hpp"
#include "immig/paths.hpp"
#include "immig/renewal.hpp"
#include "immig/rng.hpp"

#include <span>
#include <vector>

namespace immig {

/// One point S*_k of the stationary process with its mark X_k and the
/// preceding gap xi_k = S*_k - S*_{k-1}.
struct WindowPoint {
    long index = 0;
    double time = 0.0;
    double xi = 0.0;
    MarkPath mark;
};

/// The two-sided stationary marked renewal process restricted to [-c, c].
///
/// S*_0 = U xi_0 and S*_{-1} = -(1-U) xi_0 straddle the origin; (X_0, xi_0)
/// is size-biased, every other (X_k, xi_k) is a base-law draw, forward for
/// k >= 1 and from an independent copy for k <= -1.
struct StationaryWindow {
    double u = 0.0;
    double xi0 = 0.0;
    MarkPath mark0;
    std::vector<WindowPoint> points;  // increasing times, all with |time| <= c
    double c = 0.0;
    SeedInfo seed;

    [[nodiscard]] double s0() const { return u * xi0; }
    [[nodiscard]] double s_minus1() const { return -(1.0 - u) * xi0; }
    /// Number of points in the closed interval.
    [[nodiscard]] std::size_t count_in(Interval interval) const;
};

StationaryWindow sample_window(const PairModel& model, double c, Rng& rng);

/// Truncated Y*_c(u) = sum over window points of X_k(u + S*_k).
/// RangeError if |u| > c/2.
double eval_stationary(const StationaryWindow& window, double u);
std::vector<double> eval_stationary(const StationaryWindow& window, std::span<const double> u_grid);

struct TailEstimate {
    double estimate = 0.0;
    double se = 0.0;
    std::size_t n = 0;
    bool exact_zero = false;  // every sampled mark contributed exactly 0
};

/// Estimate of E sum_{|S*_k| > c} sup_{u in u_range} (|X_k(u + S*_k)| ^ 1).
///
/// Uses that the mark seen from a typical point follows the base law, so the
/// sum's mean equals (1/mu) E integral_{|r|>c} min(1, sup_u |X(u+r)|) dr;
/// the inner integral is evaluated per draw in closed form.
TailEstimate truncation_tail(const PairModel& model, double c, Interval u_range, std::size_t n, std::uint64_t seed,
                             unsigned workers = 1);

/// Library of measurable mark sets shared by both sides of the straddle identity.
class MarkPredicate {
  public:
    enum class Kind { Always, LifetimeAbove, AmplitudeIn };

    static MarkPredicate always() { return MarkPredicate(Kind::Always, 0.0, 0.0); }
    static MarkPredicate lifetime_above(double threshold) { return MarkPredicate(Kind::LifetimeAbove, threshold, 0.0); }
    /// amplitude in [lo, hi)
    static MarkPredicate amplitude_in(double lo, double hi) { return MarkPredicate(Kind::AmplitudeIn, lo, hi); }

    bool operator()(const MarkPath& mark) const;
    [[nodiscard]] std::string describe() const;
    [[nodiscard]] Kind kind() const { return kind_; }

  private:
    MarkPredicate(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}
    Kind kind_;
    double a_, b_;
};

/// 1{-S*_{-1} <= y, S*_0 < z, predicate(X_0)}; y, z may be +inf.
double straddle_lhs(const StationaryWindow& window, double y, double z, const MarkPredicate& predicate);

/// (1/mu) (z ^ xi - (xi - y)_+)_+ 1{predicate(X)} for one base-law draw.
double straddle_rhs(const PairModel& model, const MarkedDraw& draw, double y, double z,
                    const MarkPredicate& predicate);
double straddle_rhs_draw(const PairModel& model, double y, double z, const MarkPredicate& predicate, Rng& rng);

}  // namespace immig
