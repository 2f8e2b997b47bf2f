#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <variant>
#include <vector>

namespace immig {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// Piecewise-constant path: values[i] on [breakpoints[i], breakpoints[i+1]),
/// the last value persisting until `kill`, zero before the first breakpoint.
struct StepPath {
    std::vector<double> breakpoints;
    std::vector<double> values;
    double kill = infinity;
};

/// amplitude * exp(-rate * t) for t >= 0.
struct ExpDecayPath {
    double amplitude = 0.0;
    double rate = 1.0;
};

/// level on [0, lifetime).
struct ConstPath {
    double level = 0.0;
    double lifetime = infinity;
};

/// User-supplied path. `envelope(t)` must bound sup_{s>=t} |X(s)| and be
/// nonincreasing; suprema over intervals are then upper bounds only.
struct CustomPath {
    std::function<double(double)> evaluate;
    std::function<double(double)> envelope;
    std::vector<double> jumps;
};

enum class PathKind { Step, ExpDecay, Const, Custom };

/// Supremum of |X| over an interval; `exact` is false for envelope bounds.
struct SupBound {
    double value = 0.0;
    bool exact = true;
};

/// A cadlag mark path on the real line, identically zero on t < 0.
///
/// Immutable after construction and cheap to copy (custom callables are
/// shared). Evaluation is right-continuous at every breakpoint.
class MarkPath {
  public:
    MarkPath() : repr_(ConstPath{0.0, infinity}) {}

    static MarkPath step(std::vector<double> breakpoints, std::vector<double> values, double kill = infinity);
    static MarkPath exp_decay(double amplitude, double rate);
    static MarkPath constant(double level, double lifetime = infinity);
    static MarkPath custom(CustomPath path);
    static MarkPath zero() { return {}; }

    [[nodiscard]] PathKind kind() const;

    /// X(t).
    [[nodiscard]] double eval(double t) const;
    double operator()(double t) const { return eval(t); }

    /// sup of |X(u)| over u in [t1, t2]; ArgumentError if t1 > t2.
    [[nodiscard]] SupBound sup_abs(double t1, double t2) const;

    /// Sorted discontinuity times of this realized path.
    [[nodiscard]] std::vector<double> jump_set() const;

    /// First time after which the path is identically zero, or the time after
    /// which |X| stays below rel_cutoff * |amplitude| for exponential decay.
    /// Infinite when neither exists.
    [[nodiscard]] double support_end(double rel_cutoff = 0.0) const;

    /// Time of the last jump back to zero (Const lifetime, Step kill or last
    /// zero-valued breakpoint); infinite when the path never returns to zero.
    [[nodiscard]] double lifetime() const;

    /// Level for Const, initial value for ExpDecay, first nonzero value for Step, X(0) for Custom.
    [[nodiscard]] double amplitude() const;

    /// Integral of X over [0, inf); infinite or NaN when divergent.
    [[nodiscard]] double integral() const;

    /// Integral over s in [lo, hi] of min(1, sup_{v in [s, s+width]} |X(v)|).
    /// Exact for the closed-form kinds, an envelope-based upper bound for Custom.
    [[nodiscard]] double capped_window_sup_integral(double lo, double hi, double width) const;

    [[nodiscard]] const StepPath* as_step() const { return std::get_if<StepPath>(&repr_); }
    [[nodiscard]] const ExpDecayPath* as_exp_decay() const { return std::get_if<ExpDecayPath>(&repr_); }
    [[nodiscard]] const ConstPath* as_const() const { return std::get_if<ConstPath>(&repr_); }

    friend bool operator==(const MarkPath& a, const MarkPath& b);

  private:
    using Repr = std::variant<StepPath, ExpDecayPath, ConstPath, std::shared_ptr<const CustomPath>>;
    explicit MarkPath(Repr r) : repr_(std::move(r)) {}
    Repr repr_;
};

inline double eval_path(const MarkPath& path, double t) { return path.eval(t); }
inline SupBound sup_abs(const MarkPath& path, double t1, double t2) { return path.sup_abs(t1, t2); }
inline std::vector<double> jump_set(const MarkPath& path) { return path.jump_set(); }

}  // namespace immig
