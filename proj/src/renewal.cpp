#include "immig/renewal.hpp"

#include "immig/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace immig {

RenewalRealization::RenewalRealization(std::vector<double> arrivals, std::vector<double> interarrivals,
                                       std::vector<MarkPath> marks, double horizon, SeedInfo seed)
    : arrivals_(std::move(arrivals)), interarrivals_(std::move(interarrivals)), marks_(std::move(marks)),
      horizon_(horizon), seed_(seed) {
    if (arrivals_.empty() || arrivals_.front() != 0.0) throw ArgumentError("renewal walk must start at S_0 = 0");
    if (interarrivals_.size() + 1 != arrivals_.size() || marks_.size() != interarrivals_.size())
        throw ArgumentError("renewal walk needs one mark and interarrival per step");
    if (!(arrivals_.back() > horizon_)) throw ArgumentError("renewal walk must overshoot its horizon");
}

std::size_t RenewalRealization::first_passage(double t) const {
    if (t > horizon_)
        throw RangeError("first_passage: t = " + std::to_string(t) + " beyond horizon " + std::to_string(horizon_));
    return static_cast<std::size_t>(std::upper_bound(arrivals_.begin(), arrivals_.end(), t) - arrivals_.begin());
}

std::vector<double> RenewalRealization::eval_immigration(double t, std::span<const double> u_grid,
                                                         double rel_cutoff) const {
    std::vector<double> out(u_grid.size(), 0.0);
    if (u_grid.empty()) return out;
    const auto [min_it, max_it] = std::minmax_element(u_grid.begin(), u_grid.end());
    const double earliest = t + *min_it, latest = t + *max_it;
    if (latest > horizon_)
        throw RangeError("eval_immigration: t + max(u) = " + std::to_string(latest) + " beyond horizon " +
                         std::to_string(horizon_));
    if (latest < 0.0) return out;
    const std::size_t active = first_passage(latest);
    for (std::size_t k = 0; k < active; ++k) {
        const double epoch = arrivals_[k];
        if (earliest - epoch >= marks_[k].support_end(rel_cutoff)) continue;
        for (std::size_t j = 0; j < u_grid.size(); ++j) out[j] += marks_[k].eval(t + u_grid[j] - epoch);
    }
    return out;
}

double RenewalRealization::eval_immigration(double t) const {
    const double zero = 0.0;
    return eval_immigration(t, std::span<const double>(&zero, 1)).front();
}

std::pair<double, double> RenewalRealization::age_residual_at(double t) const {
    const std::size_t nu = first_passage(t);
    if (nu == 0) throw StateError("age_residual_at: no epoch at or before t = " + std::to_string(t));
    return {t - arrivals_[nu - 1], arrivals_[nu] - t};
}

std::size_t RenewalRealization::count_points(Interval interval) const {
    if (interval.lo > interval.hi) return 0;
    if (interval.lo < 0.0 || interval.hi > horizon_)
        throw RangeError("count_points: interval outside [0, horizon]");
    const auto lo = std::lower_bound(arrivals_.begin(), arrivals_.end(), interval.lo);
    const auto hi = std::upper_bound(arrivals_.begin(), arrivals_.end(), interval.hi);
    return static_cast<std::size_t>(hi - lo);
}

RenewalRealization simulate_walk(const PairModel& model, double horizon, Rng& rng) {
    if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw ArgumentError("simulate_walk: horizon must be >= 0");
    const auto expected = static_cast<std::size_t>(horizon / model.mu()) + 4;
    std::vector<double> arrivals{0.0};
    std::vector<double> interarrivals;
    std::vector<MarkPath> marks;
    arrivals.reserve(expected + 1);
    interarrivals.reserve(expected);
    marks.reserve(expected);
    double s = 0.0;
    while (s <= horizon) {
        MarkedDraw draw = model.sample_pair(rng);
        s += draw.xi;
        arrivals.push_back(s);
        interarrivals.push_back(draw.xi);
        marks.push_back(std::move(draw.mark));
    }
    return {std::move(arrivals), std::move(interarrivals), std::move(marks), horizon, rng.info()};
}

}  // namespace immig
