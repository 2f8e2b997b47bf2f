#pragma once

#include "immig/models.hpp"
#include "immig/paths.hpp"
#include "immig/rng.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace immig {

/// Relative amplitude below which exponentially decaying marks are dropped
/// by the immigration evaluator.
inline constexpr double default_decay_cutoff = 1e-15;

/// Closed interval [lo, hi]; empty when lo > hi.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// One zero-delayed renewal trajectory S_0 = 0 < S_1 < ... < S_n with
/// S_n > horizon. marks[k] is X_{k+1}, attached to epoch S_k, and
/// interarrivals[k] is xi_{k+1} = S_{k+1} - S_k.
class RenewalRealization {
  public:
    RenewalRealization(std::vector<double> arrivals, std::vector<double> interarrivals, std::vector<MarkPath> marks,
                       double horizon, SeedInfo seed);

    [[nodiscard]] std::span<const double> arrivals() const { return arrivals_; }
    [[nodiscard]] std::span<const double> interarrivals() const { return interarrivals_; }
    [[nodiscard]] std::span<const MarkPath> marks() const { return marks_; }
    [[nodiscard]] double horizon() const { return horizon_; }
    [[nodiscard]] const SeedInfo& seed_info() const { return seed_; }

    /// nu(t) = min{k >= 0 : S_k > t}. RangeError for t > horizon.
    [[nodiscard]] std::size_t first_passage(double t) const;

    /// Y(t + u_j) for every u_j in the grid, in one pass over the epochs.
    /// Marks whose support (see MarkPath::support_end) ends before the
    /// earliest grid time are skipped. RangeError if t + max(u) > horizon.
    [[nodiscard]] std::vector<double> eval_immigration(double t, std::span<const double> u_grid,
                                                       double rel_cutoff = default_decay_cutoff) const;
    [[nodiscard]] double eval_immigration(double t) const;

    /// (t - S_{nu(t)-1}, S_{nu(t)} - t).
    [[nodiscard]] std::pair<double, double> age_residual_at(double t) const;

    /// #{k : S_k in interval}; RangeError unless the interval lies in [0, horizon].
    [[nodiscard]] std::size_t count_points(Interval interval) const;

  private:
    std::vector<double> arrivals_;
    std::vector<double> interarrivals_;
    std::vector<MarkPath> marks_;
    double horizon_;
    SeedInfo seed_;
};

/// Draws i.i.d. (X_{k+1}, xi_{k+1}) until S_n > horizon.
RenewalRealization simulate_walk(const PairModel& model, double horizon, Rng& rng);

}  // namespace immig
