#include "immig/paths.hpp"

#include "immig/errors.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace immig {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// End of piece i of a step path.
double piece_end(const StepPath& p, std::size_t i) {
    return i + 1 < p.breakpoints.size() ? std::min(p.breakpoints[i + 1], p.kill) : p.kill;
}

double overlap(double a0, double a1, double b0, double b1) {
    const double lo = std::max(a0, b0), hi = std::min(a1, b1);
    return hi > lo ? hi - lo : 0.0;
}

// Integral of min(1, A e^{-a s}) over [p, q], 0 <= p <= q.
double capped_exp_integral(double amp, double rate, double p, double q) {
    if (q <= p || amp == 0.0) return 0.0;
    const double knee = amp > 1.0 ? std::log(amp) / rate : 0.0;
    double total = 0.0;
    if (p < knee) total += std::min(q, knee) - p;
    const double from = std::max(p, knee);
    if (q > from) {
        const double tail_end = std::isinf(q) ? 0.0 : std::exp(-rate * q);
        total += amp / rate * (std::exp(-rate * from) - tail_end);
    }
    return total;
}

double integrate_numeric(const std::function<double(double)>& f, double lo, double hi) {
    if (hi <= lo) return 0.0;
    if (std::isinf(hi)) {
        boost::math::quadrature::exp_sinh<double> integrator;
        return integrator.integrate([&](double x) { return f(x); }, lo, hi);
    }
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate([&](double x) { return f(x); }, lo, hi);
}

}  // namespace

MarkPath MarkPath::step(std::vector<double> breakpoints, std::vector<double> values, double kill) {
    if (breakpoints.size() != values.size())
        throw ArgumentError("step path needs one value per breakpoint");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!std::isfinite(breakpoints[i]) || !std::isfinite(values[i]))
            throw ArgumentError("step path breakpoints and values must be finite");
        if (i == 0 && breakpoints[0] < 0.0) throw ArgumentError("step path breakpoints must be >= 0");
        if (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))
            throw ArgumentError("step path breakpoints must be strictly increasing");
    }
    if (!breakpoints.empty() && !(kill > breakpoints.back()))
        throw ArgumentError("step path kill time must exceed the last breakpoint");
    return MarkPath(StepPath{std::move(breakpoints), std::move(values), kill});
}

MarkPath MarkPath::exp_decay(double amplitude, double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) throw ArgumentError("exponential decay rate must be positive");
    if (!std::isfinite(amplitude)) throw ArgumentError("exponential decay amplitude must be finite");
    return MarkPath(ExpDecayPath{amplitude, rate});
}

MarkPath MarkPath::constant(double level, double lifetime) {
    if (!std::isfinite(level)) throw ArgumentError("constant path level must be finite");
    if (!(lifetime > 0.0)) throw ArgumentError("constant path lifetime must be positive");
    return MarkPath(ConstPath{level, lifetime});
}

MarkPath MarkPath::custom(CustomPath path) {
    if (!path.evaluate || !path.envelope) throw ArgumentError("custom path needs an evaluator and an envelope");
    std::sort(path.jumps.begin(), path.jumps.end());
    return MarkPath(std::make_shared<const CustomPath>(std::move(path)));
}

PathKind MarkPath::kind() const {
    return std::visit(overloaded{[](const StepPath&) { return PathKind::Step; },
                                 [](const ExpDecayPath&) { return PathKind::ExpDecay; },
                                 [](const ConstPath&) { return PathKind::Const; },
                                 [](const std::shared_ptr<const CustomPath>&) { return PathKind::Custom; }},
                      repr_);
}

double MarkPath::eval(double t) const {
    if (t < 0.0) return 0.0;
    return std::visit(
        overloaded{[t](const StepPath& p) {
                       if (t >= p.kill) return 0.0;
                       auto it = std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), t);
                       if (it == p.breakpoints.begin()) return 0.0;
                       return p.values[static_cast<std::size_t>(it - p.breakpoints.begin()) - 1];
                   },
                   [t](const ExpDecayPath& p) { return p.amplitude * std::exp(-p.rate * t); },
                   [t](const ConstPath& p) { return t < p.lifetime ? p.level : 0.0; },
                   [t](const std::shared_ptr<const CustomPath>& p) { return p->evaluate(t); }},
        repr_);
}

SupBound MarkPath::sup_abs(double t1, double t2) const {
    if (t1 > t2) throw ArgumentError("sup_abs interval is reversed");
    if (t2 < 0.0) return {0.0, true};
    const double lo = std::max(t1, 0.0);
    return std::visit(
        overloaded{[&](const StepPath& p) {
                       double best = 0.0;
                       for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
                           if (p.breakpoints[i] > t2) break;
                           if (piece_end(p, i) > lo) best = std::max(best, std::abs(p.values[i]));
                       }
                       return SupBound{best, true};
                   },
                   [&](const ExpDecayPath& p) {
                       return SupBound{std::abs(p.amplitude) * std::exp(-p.rate * lo), true};
                   },
                   [&](const ConstPath& p) { return SupBound{lo < p.lifetime ? std::abs(p.level) : 0.0, true}; },
                   [&](const std::shared_ptr<const CustomPath>& p) { return SupBound{p->envelope(lo), false}; }},
        repr_);
}

std::vector<double> MarkPath::jump_set() const {
    return std::visit(overloaded{[](const StepPath& p) {
                                     std::vector<double> out;
                                     double prev = 0.0;
                                     for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
                                         if (p.values[i] != prev) out.push_back(p.breakpoints[i]);
                                         prev = p.values[i];
                                     }
                                     if (prev != 0.0 && std::isfinite(p.kill)) out.push_back(p.kill);
                                     return out;
                                 },
                                 [](const ExpDecayPath& p) {
                                     return p.amplitude != 0.0 ? std::vector<double>{0.0} : std::vector<double>{};
                                 },
                                 [](const ConstPath& p) {
                                     std::vector<double> out;
                                     if (p.level == 0.0) return out;
                                     out.push_back(0.0);
                                     if (std::isfinite(p.lifetime)) out.push_back(p.lifetime);
                                     return out;
                                 },
                                 [](const std::shared_ptr<const CustomPath>& p) { return p->jumps; }},
                      repr_);
}

double MarkPath::support_end(double rel_cutoff) const {
    return std::visit(overloaded{[](const StepPath& p) {
                                     for (std::size_t i = p.values.size(); i-- > 0;)
                                         if (p.values[i] != 0.0) return piece_end(p, i);
                                     return 0.0;
                                 },
                                 [rel_cutoff](const ExpDecayPath& p) {
                                     if (p.amplitude == 0.0) return 0.0;
                                     if (rel_cutoff <= 0.0) return infinity;
                                     return std::log(1.0 / rel_cutoff) / p.rate;
                                 },
                                 [](const ConstPath& p) { return p.level == 0.0 ? 0.0 : p.lifetime; },
                                 [](const std::shared_ptr<const CustomPath>&) { return infinity; }},
                      repr_);
}

double MarkPath::lifetime() const {
    if (const auto* p = as_exp_decay()) return p->amplitude == 0.0 ? 0.0 : infinity;
    return support_end(0.0);
}

double MarkPath::amplitude() const {
    return std::visit(overloaded{[](const StepPath& p) {
                                     for (double v : p.values)
                                         if (v != 0.0) return v;
                                     return 0.0;
                                 },
                                 [](const ExpDecayPath& p) { return p.amplitude; },
                                 [](const ConstPath& p) { return p.level; },
                                 [](const std::shared_ptr<const CustomPath>& p) { return p->evaluate(0.0); }},
                      repr_);
}

double MarkPath::integral() const {
    return std::visit(
        overloaded{[](const StepPath& p) {
                       double total = 0.0;
                       for (std::size_t i = 0; i < p.values.size(); ++i)
                           if (p.values[i] != 0.0) total += p.values[i] * (piece_end(p, i) - p.breakpoints[i]);
                       return total;
                   },
                   [](const ExpDecayPath& p) { return p.amplitude / p.rate; },
                   [](const ConstPath& p) { return p.level == 0.0 ? 0.0 : p.level * p.lifetime; },
                   [](const std::shared_ptr<const CustomPath>& p) {
                       double total = 0.0, from = 0.0;
                       for (double j : p->jumps) {
                           if (j <= from) continue;
                           total += integrate_numeric(p->evaluate, from, j);
                           from = j;
                       }
                       return total + integrate_numeric(p->evaluate, from, infinity);
                   }},
        repr_);
}

double MarkPath::capped_window_sup_integral(double lo, double hi, double width) const {
    if (lo > hi) throw ArgumentError("capped_window_sup_integral range is reversed");
    if (width < 0.0) throw ArgumentError("capped_window_sup_integral width must be >= 0");
    lo = std::max(lo, -width);  // window misses [0, inf) entirely below -width
    if (hi <= lo) return 0.0;

    return std::visit(
        overloaded{
            [&](const ConstPath& p) {
                if (p.level == 0.0) return 0.0;
                const double len = overlap(lo, hi, -width, p.lifetime);
                return std::min(1.0, std::abs(p.level)) * len;
            },
            [&](const ExpDecayPath& p) {
                const double amp = std::abs(p.amplitude);
                if (amp == 0.0) return 0.0;
                return std::min(1.0, amp) * overlap(lo, hi, -width, 0.0) +
                       capped_exp_integral(amp, p.rate, std::max(lo, 0.0), hi);
            },
            [&](const StepPath& p) {
                if (p.breakpoints.empty()) return 0.0;
                // The window supremum only changes where a piece enters or leaves the window.
                std::vector<double> cuts{lo, hi};
                for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
                    cuts.push_back(p.breakpoints[i] - width);
                    cuts.push_back(piece_end(p, i));
                }
                std::sort(cuts.begin(), cuts.end());
                double total = 0.0;
                for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                    const double a = std::max(cuts[i], lo), b = std::min(cuts[i + 1], hi);
                    if (!(b > a)) continue;
                    const double probe = std::isinf(b) ? a + 1.0 : 0.5 * (a + b);
                    const double s = std::min(1.0, sup_abs(probe, probe + width).value);
                    if (s == 0.0) continue;
                    total += s * (b - a);
                }
                return total;
            },
            [&](const std::shared_ptr<const CustomPath>& p) {
                const auto capped = [&](double s) { return std::min(1.0, p->envelope(std::max(s, 0.0))); };
                return integrate_numeric(capped, lo, hi);
            }},
        repr_);
}

bool operator==(const MarkPath& a, const MarkPath& b) {
    if (a.repr_.index() != b.repr_.index()) return false;
    return std::visit(overloaded{[&](const StepPath& p) {
                                     const auto& q = std::get<StepPath>(b.repr_);
                                     return p.breakpoints == q.breakpoints && p.values == q.values &&
                                            p.kill == q.kill;
                                 },
                                 [&](const ExpDecayPath& p) {
                                     const auto& q = std::get<ExpDecayPath>(b.repr_);
                                     return p.amplitude == q.amplitude && p.rate == q.rate;
                                 },
                                 [&](const ConstPath& p) {
                                     const auto& q = std::get<ConstPath>(b.repr_);
                                     return p.level == q.level && p.lifetime == q.lifetime;
                                 },
                                 [&](const std::shared_ptr<const CustomPath>& p) {
                                     return p == std::get<std::shared_ptr<const CustomPath>>(b.repr_);
                                 }},
                      a.repr_);
}

}  // namespace immig
