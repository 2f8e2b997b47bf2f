#include "immig/stationary.hpp"

#include "immig/errors.hpp"
#include "immig/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace immig {

std::size_t StationaryWindow::count_in(Interval interval) const {
    if (interval.lo > interval.hi) return 0;
    if (interval.lo < -c || interval.hi > c) throw RangeError("count_in: interval leaves the window [-c, c]");
    const auto lo = std::lower_bound(points.begin(), points.end(), interval.lo,
                                     [](const WindowPoint& p, double v) { return p.time < v; });
    const auto hi = std::upper_bound(points.begin(), points.end(), interval.hi,
                                     [](double v, const WindowPoint& p) { return v < p.time; });
    return static_cast<std::size_t>(hi - lo);
}

StationaryWindow sample_window(const PairModel& model, double c, Rng& rng) {
    if (!(c > 0.0) || !std::isfinite(c)) throw ArgumentError("sample_window: c must be positive");
    StationaryWindow w;
    w.c = c;
    w.seed = rng.info();
    w.u = rng.uniform();
    MarkedDraw zero = model.size_biased_pair(rng);
    w.xi0 = zero.xi;
    w.mark0 = zero.mark;

    const double expected = 2.0 * c / model.mu() + 8.0;
    std::vector<WindowPoint> backward;
    w.points.reserve(static_cast<std::size_t>(expected));

    // k <= -1: S*_{-1} carries X_{-1}; S*_{-k-1} = S*_{-k} - xi_{-k}.
    double s = w.s_minus1();
    for (long k = -1; s >= -c; --k) {
        MarkedDraw d = model.sample_pair(rng);
        backward.push_back({k, s, d.xi, std::move(d.mark)});
        s -= d.xi;
    }
    std::reverse(backward.begin(), backward.end());
    w.points = std::move(backward);

    s = w.s0();
    if (s <= c) w.points.push_back({0, s, w.xi0, w.mark0});
    for (long k = 1; s <= c; ++k) {
        MarkedDraw d = model.sample_pair(rng);
        s += d.xi;
        if (s > c) break;
        w.points.push_back({k, s, d.xi, std::move(d.mark)});
    }
    return w;
}

double eval_stationary(const StationaryWindow& window, double u) {
    if (std::abs(u) > 0.5 * window.c)
        throw RangeError("eval_stationary: |u| = " + std::to_string(std::abs(u)) +
                         " exceeds c/2; enlarge the truncation radius c");
    double total = 0.0;
    for (const auto& p : window.points) total += p.mark.eval(u + p.time);
    return total;
}

std::vector<double> eval_stationary(const StationaryWindow& window, std::span<const double> u_grid) {
    std::vector<double> out(u_grid.size(), 0.0);
    for (double u : u_grid)
        if (std::abs(u) > 0.5 * window.c)
            throw RangeError("eval_stationary: |u| = " + std::to_string(std::abs(u)) +
                             " exceeds c/2; enlarge the truncation radius c");
    for (const auto& p : window.points)
        for (std::size_t j = 0; j < u_grid.size(); ++j) out[j] += p.mark.eval(u_grid[j] + p.time);
    return out;
}

TailEstimate truncation_tail(const PairModel& model, double c, Interval u_range, std::size_t n, std::uint64_t seed,
                             unsigned workers) {
    if (!(c > 0.0)) throw ArgumentError("truncation_tail: c must be positive");
    if (u_range.lo > u_range.hi) throw ArgumentError("truncation_tail: u_range is reversed");
    if (n == 0) throw ArgumentError("truncation_tail: need at least one draw");
    const double width = u_range.hi - u_range.lo;
    // r > c: window start s = r + u_lo runs over (c + u_lo, inf); r < -c: over (-inf, -c + u_lo).
    const auto values = parallel_map<double>(n, workers, [&](std::size_t i) {
        Rng rng = Rng::substream(seed, streams::tail, i);
        const MarkedDraw d = model.sample_pair(rng);
        return d.mark.capped_window_sup_integral(c + u_range.lo, infinity, width) +
               d.mark.capped_window_sup_integral(-infinity, -c + u_range.lo, width);
    });
    double sum = 0.0, sum_sq = 0.0;
    bool all_zero = true;
    for (double v : values) {
        sum += v;
        sum_sq += v * v;
        all_zero = all_zero && v == 0.0;
    }
    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    const double var = n > 1 ? std::max(0.0, (sum_sq - nn * mean * mean) / (nn - 1.0)) : 0.0;
    TailEstimate t;
    t.estimate = mean / model.mu();
    t.se = std::sqrt(var / nn) / model.mu();
    t.n = n;
    t.exact_zero = all_zero;
    return t;
}

bool MarkPredicate::operator()(const MarkPath& mark) const {
    switch (kind_) {
        case Kind::Always: return true;
        case Kind::LifetimeAbove: return mark.lifetime() > a_;
        case Kind::AmplitudeIn: {
            const double amp = mark.amplitude();
            return amp >= a_ && amp < b_;
        }
    }
    return false;
}

std::string MarkPredicate::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
        case Kind::Always: os << "true"; break;
        case Kind::LifetimeAbove: os << "lifetime>" << a_; break;
        case Kind::AmplitudeIn: os << "amplitude in [" << a_ << "," << b_ << ")"; break;
    }
    return os.str();
}

namespace {

void check_yz(double y, double z) {
    if (y < 0.0 || z < 0.0 || std::isnan(y) || std::isnan(z))
        throw ArgumentError("straddle: y and z must be >= 0");
}

}  // namespace

double straddle_lhs(const StationaryWindow& window, double y, double z, const MarkPredicate& predicate) {
    check_yz(y, z);
    const bool hit = -window.s_minus1() <= y && window.s0() < z && predicate(window.mark0);
    return hit ? 1.0 : 0.0;
}

double straddle_rhs(const PairModel& model, const MarkedDraw& draw, double y, double z,
                    const MarkPredicate& predicate) {
    check_yz(y, z);
    if (!predicate(draw.mark)) return 0.0;
    const double xi = draw.xi;
    const double value = std::min(z, xi) - std::max(xi - y, 0.0);
    return std::max(value, 0.0) / model.mu();
}

double straddle_rhs_draw(const PairModel& model, double y, double z, const MarkPredicate& predicate, Rng& rng) {
    return straddle_rhs(model, model.sample_pair(rng), y, z, predicate);
}

}  // namespace immig
