#include "immig/dist.hpp"

#include "immig/errors.hpp"
#include "immig/paths.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace immig {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError(std::string(what) + " must be positive and finite");
}

}  // namespace

ScalarDist ScalarDist::exponential(double rate) {
    require_positive(rate, "exponential rate");
    return {Family::Exponential, rate, 0.0};
}

ScalarDist ScalarDist::gamma(double shape, double scale) {
    require_positive(shape, "gamma shape");
    require_positive(scale, "gamma scale");
    return {Family::Gamma, shape, scale};
}

ScalarDist ScalarDist::uniform(double upper) {
    require_positive(upper, "uniform upper bound");
    return {Family::Uniform, upper, 0.0};
}

ScalarDist ScalarDist::deterministic(double value) { return deterministic(ExactValue::from_double(value)); }

ScalarDist ScalarDist::deterministic(ExactValue value) {
    const double v = value.approx();
    require_positive(v, "deterministic value");
    ScalarDist d(Family::Deterministic, v, 0.0);
    d.values_ = {v};
    d.probs_ = {1.0};
    d.cumulative_ = {1.0};
    d.exact_atoms_ = {std::move(value)};
    return d;
}

ScalarDist ScalarDist::discrete(std::vector<double> atoms, std::vector<double> probs) {
    std::vector<ExactValue> exact;
    exact.reserve(atoms.size());
    for (double a : atoms) exact.push_back(ExactValue::from_double(a));
    return discrete(std::move(exact), std::move(probs));
}

ScalarDist ScalarDist::discrete(std::vector<ExactValue> atoms, std::vector<double> probs) {
    if (atoms.empty() || atoms.size() != probs.size())
        throw ArgumentError("discrete law needs one probability per atom");
    std::vector<std::size_t> order(atoms.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return atoms[i] < atoms[j]; });
    ScalarDist d(Family::Discrete, 0.0, 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto i = order[k];
        if (k > 0 && atoms[i] == atoms[order[k - 1]]) throw ArgumentError("discrete atoms must be distinct");
        require_positive(atoms[i].approx(), "discrete atom");
        if (!(probs[i] >= 0.0)) throw ArgumentError("discrete probabilities must be >= 0");
        total += probs[i];
        d.values_.push_back(atoms[i].approx());
        d.probs_.push_back(probs[i]);
        d.exact_atoms_.push_back(atoms[i]);
        d.full_exact_.push_back(atoms[i]);
        d.cumulative_.push_back(total);
    }
    if (std::abs(total - 1.0) > 1e-12) throw ArgumentError("discrete probabilities must sum to 1");
    d.cumulative_.back() = 1.0;
    // Zero-probability atoms are not atoms of the law.
    for (std::size_t k = d.probs_.size(); k-- > 0;)
        if (d.probs_[k] == 0.0) d.exact_atoms_.erase(d.exact_atoms_.begin() + static_cast<long>(k));
    return d;
}

ScalarDist ScalarDist::pareto(double alpha, double x_min) {
    require_positive(alpha, "pareto alpha");
    require_positive(x_min, "pareto x_min");
    return {Family::Pareto, alpha, x_min};
}

ScalarDist ScalarDist::lognormal(double m, double s) {
    if (!std::isfinite(m)) throw ArgumentError("lognormal location must be finite");
    require_positive(s, "lognormal scale");
    return {Family::LogNormal, m, s};
}

std::string ScalarDist::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (family_) {
        case Family::Exponential: os << "exponential(" << p0_ << ")"; break;
        case Family::Gamma: os << "gamma(" << p0_ << ", " << p1_ << ")"; break;
        case Family::Uniform:
            os << "uniform(" << p0_ << ")";
            if (p1_ > 0.0) os << " size-biased x" << p1_;
            break;
        case Family::Deterministic: os << "deterministic(" << exact_atoms_.front().str() << ")"; break;
        case Family::Discrete: {
            os << "discrete(";
            for (std::size_t i = 0; i < values_.size(); ++i)
                os << (i ? ", " : "") << ExactValue::from_double(values_[i]).str() << ":" << probs_[i];
            os << ")";
            break;
        }
        case Family::Pareto: os << "pareto(" << p0_ << ", " << p1_ << ")"; break;
        case Family::LogNormal: os << "lognormal(" << p0_ << ", " << p1_ << ")"; break;
    }
    return os.str();
}

double ScalarDist::quantile(double p) const {
    switch (family_) {
        case Family::Exponential: return -std::log1p(-p) / p0_;
        case Family::Gamma: return boost::math::gamma_p_inv(p0_, p) * p1_;
        case Family::Uniform: return p0_ * (p1_ == 0.0 ? p : std::pow(p, 1.0 / (p1_ + 1.0)));
        case Family::Deterministic: return p0_;
        case Family::Discrete: {
            auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), p);
            if (it == cumulative_.end()) --it;
            return values_[static_cast<std::size_t>(it - cumulative_.begin())];
        }
        case Family::Pareto: return p1_ * std::pow(1.0 - p, -1.0 / p0_);
        case Family::LogNormal: return std::exp(p0_ - p1_ * std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p));
    }
    return 0.0;
}

double ScalarDist::cdf(double x) const {
    if (x < 0.0) return 0.0;
    switch (family_) {
        case Family::Exponential: return -std::expm1(-p0_ * x);
        case Family::Gamma: return boost::math::gamma_p(p0_, x / p1_);
        case Family::Uniform: return std::pow(std::min(1.0, x / p0_), p1_ + 1.0);
        case Family::Deterministic: return x >= p0_ ? 1.0 : 0.0;
        case Family::Discrete: {
            auto it = std::upper_bound(values_.begin(), values_.end(), x);
            if (it == values_.begin()) return 0.0;
            return cumulative_[static_cast<std::size_t>(it - values_.begin()) - 1];
        }
        case Family::Pareto: return x < p1_ ? 0.0 : 1.0 - std::pow(p1_ / x, p0_);
        case Family::LogNormal:
            if (x == 0.0) return 0.0;
            return 0.5 * boost::math::erfc(-(std::log(x) - p0_) / (p1_ * std::sqrt(2.0)));
    }
    return 0.0;
}

double ScalarDist::mean() const {
    switch (family_) {
        case Family::Exponential: return 1.0 / p0_;
        case Family::Gamma: return p0_ * p1_;
        case Family::Uniform: return p0_ * (p1_ + 1.0) / (p1_ + 2.0);
        case Family::Deterministic: return p0_;
        case Family::Discrete: {
            double m = 0.0;
            for (std::size_t i = 0; i < values_.size(); ++i) m += values_[i] * probs_[i];
            return m;
        }
        case Family::Pareto: return p0_ > 1.0 ? p0_ * p1_ / (p0_ - 1.0) : infinity;
        case Family::LogNormal: return std::exp(p0_ + 0.5 * p1_ * p1_);
    }
    return 0.0;
}

double ScalarDist::support_max() const {
    switch (family_) {
        case Family::Uniform: return p0_;
        case Family::Deterministic: return p0_;
        case Family::Discrete: return values_.back();
        default: return infinity;
    }
}

std::optional<ScalarDist> ScalarDist::size_biased() const {
    switch (family_) {
        case Family::Exponential: return gamma(2.0, 1.0 / p0_);
        case Family::Gamma: return gamma(p0_ + 1.0, p1_);
        case Family::Deterministic: return *this;
        case Family::Discrete: {
            const double mu = mean();
            std::vector<double> weights;
            for (std::size_t i = 0; i < values_.size(); ++i) weights.push_back(values_[i] * probs_[i] / mu);
            std::vector<ExactValue> atoms = full_exact_;
            double total = std::accumulate(weights.begin(), weights.end(), 0.0);
            for (double& w : weights) w /= total;
            return discrete(std::move(atoms), std::move(weights));
        }
        case Family::Pareto:
            if (p0_ > 1.0) return pareto(p0_ - 1.0, p1_);
            return std::nullopt;
        case Family::LogNormal: return lognormal(p0_ + p1_ * p1_, p1_);
        case Family::Uniform: {
            ScalarDist d(Family::Uniform, p0_, p1_ + 1.0);
            return d;
        }
    }
    return std::nullopt;
}

}  // namespace immig
