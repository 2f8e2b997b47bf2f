#pragma once

#include "immig/exact.hpp"
#include "immig/rng.hpp"

#include <optional>
#include <string>
#include <vector>

namespace immig {

/// Positive scalar law used for interarrival times, service times, amplitudes
/// and multiplicative noise.
///
/// Parameterizations: Exponential(rate), Gamma(shape, scale),
/// Uniform(0, upper), Deterministic(value), Discrete(atoms, probs),
/// Pareto(alpha, x_min), LogNormal(m, s) with log X ~ N(m, s^2).
/// Sampling is by inversion of a single uniform.
class ScalarDist {
  public:
    enum class Family { Exponential, Gamma, Uniform, Deterministic, Discrete, Pareto, LogNormal };

    static ScalarDist exponential(double rate);
    static ScalarDist gamma(double shape, double scale);
    static ScalarDist uniform(double upper);
    static ScalarDist deterministic(double value);
    static ScalarDist deterministic(ExactValue value);
    static ScalarDist discrete(std::vector<double> atoms, std::vector<double> probs);
    static ScalarDist discrete(std::vector<ExactValue> atoms, std::vector<double> probs);
    static ScalarDist pareto(double alpha, double x_min);
    static ScalarDist lognormal(double m, double s);

    [[nodiscard]] Family family() const { return family_; }
    [[nodiscard]] std::string describe() const;

    [[nodiscard]] double quantile(double p) const;
    [[nodiscard]] double cdf(double x) const;
    [[nodiscard]] double survival(double x) const { return 1.0 - cdf(x); }
    [[nodiscard]] double sample(Rng& rng) const { return quantile(rng.uniform()); }

    /// Mean; +inf for Pareto with alpha <= 1.
    [[nodiscard]] double mean() const;
    /// Upper end of the support (+inf when unbounded).
    [[nodiscard]] double support_max() const;

    /// Law of the size-biased variable with density y f(y) / mean, when it has
    /// a closed form in the same family set.
    [[nodiscard]] std::optional<ScalarDist> size_biased() const;

    /// Atoms of the discrete component, exact, with their probabilities.
    [[nodiscard]] const std::vector<ExactValue>& atoms() const { return exact_atoms_; }
    [[nodiscard]] const std::vector<double>& atom_probs() const { return probs_; }
    [[nodiscard]] bool has_continuous_part() const {
        return family_ != Family::Deterministic && family_ != Family::Discrete;
    }

  private:
    ScalarDist(Family f, double p0, double p1) : family_(f), p0_(p0), p1_(p1) {}

    Family family_;
    double p0_ = 0.0;
    double p1_ = 0.0;  // for Uniform: power k of the density y^k on (0, upper)
    std::vector<double> values_;  // Discrete / Deterministic atom values
    std::vector<double> probs_;
    std::vector<double> cumulative_;
    std::vector<ExactValue> exact_atoms_;  // positive-probability atoms only
    std::vector<ExactValue> full_exact_;
};

}  // namespace immig
