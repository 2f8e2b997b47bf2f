#include "immig/models.hpp"

#include "immig/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace immig {

namespace {

std::optional<ScalarDist> validate_size_bias(const ScalarDist& xi, SizeBiasMethod method,
                                             const std::optional<double>& bound) {
    if (bound) {
        if (!(*bound > 0.0) || !std::isfinite(*bound)) throw ConfigError("model.xi_bound must be positive and finite");
        if (*bound < xi.support_max())
            throw ConfigError("model.xi_bound = " + std::to_string(*bound) + " does not bound " + xi.describe());
    }
    auto exact = xi.size_biased();
    switch (method) {
        case SizeBiasMethod::Exact:
            if (!exact) throw ConfigError("model.size_bias = exact but " + xi.describe() + " has no exact transform");
            return exact;
        case SizeBiasMethod::Rejection:
            if (!bound) throw ConfigError("model.size_bias = rejection requires model.xi_bound");
            return std::nullopt;
        case SizeBiasMethod::Automatic:
            if (exact) return exact;
            if (!bound)
                throw ConfigError("size-biasing " + xi.describe() +
                                  " needs an exact transform or model.xi_bound for rejection sampling");
            return std::nullopt;
    }
    return std::nullopt;
}

std::vector<ExactValue> negated(const std::vector<ExactValue>& v) {
    std::vector<ExactValue> out;
    for (const auto& x : v) out.push_back(-x);
    return out;
}

ModelMeta base_meta(const ScalarDist& xi, const EtaLaw& eta, std::optional<double> xi_bound) {
    ModelMeta meta;
    meta.mu = xi.mean();
    meta.xi_bound = xi_bound;
    meta.lattice = xi.atoms();
    meta.independent = eta.kind() == EtaLaw::Kind::Independent;
    return meta;
}

}  // namespace

PairModel::PairModel(ScalarDist xi, std::size_t noise_dim, MarkBuilder builder, ModelMeta meta,
                     SizeBiasMethod method)
    : xi_(std::move(xi)), noise_dim_(noise_dim), builder_(std::move(builder)), meta_(std::move(meta)),
      method_(method) {
    if (!builder_) throw ArgumentError("pair model needs a mark builder");
    if (!(meta_.mu > 0.0) || !std::isfinite(meta_.mu))
        throw ConfigError("model.xi must have a finite positive mean, got " + xi_.describe());
    if (noise_dim_ > 16) throw ArgumentError("mark noise dimension is limited to 16");
    biased_xi_ = validate_size_bias(xi_, method_, meta_.xi_bound);
}

PairModel PairModel::with_size_bias(SizeBiasMethod method) const {
    return PairModel(xi_, noise_dim_, builder_, meta_, method);
}

PairModel PairModel::with_jump_laws(JumpLaw jumps, JumpLaw shifted_jumps) const {
    ModelMeta meta = meta_;
    jumps.atoms = unique_sorted(std::move(jumps.atoms));
    shifted_jumps.atoms = unique_sorted(std::move(shifted_jumps.atoms));
    meta.jumps = std::move(jumps);
    meta.shifted_jumps = std::move(shifted_jumps);
    return PairModel(xi_, noise_dim_, builder_, std::move(meta), method_);
}

MarkPath PairModel::build_mark(double xi, std::span<const double> noise) const {
    if (noise.size() != noise_dim_) throw ArgumentError("mark noise has the wrong dimension");
    return builder_(xi, noise);
}

MarkPath PairModel::mark_from(double xi, Rng& rng) const {
    std::array<double, 16> noise{};
    for (std::size_t i = 0; i < noise_dim_; ++i) noise[i] = rng.uniform();
    return builder_(xi, std::span<const double>(noise.data(), noise_dim_));
}

MarkedDraw PairModel::sample_pair(Rng& rng) const {
    const double xi = xi_.sample(rng);
    return {mark_from(xi, rng), xi};
}

MarkedDraw PairModel::size_biased_pair(Rng& rng) const {
    if (biased_xi_) {
        const double xi0 = biased_xi_->sample(rng);
        return {mark_from(xi0, rng), xi0};
    }
    const double bound = *meta_.xi_bound;
    for (;;) {
        MarkedDraw proposal = sample_pair(rng);
        if (proposal.xi > bound) throw NumericalError("model.xi_bound violated by a draw of xi");
        if (rng.uniform() * bound < proposal.xi) return proposal;
    }
}

// ---------------------------------------------------------------------------

EtaLaw EtaLaw::independent(ScalarDist law) {
    EtaLaw e(Kind::Independent);
    e.law_ = std::move(law);
    return e;
}

EtaLaw EtaLaw::equals_xi() { return EtaLaw(Kind::EqualsXi); }

EtaLaw EtaLaw::xi_times(ScalarDist w) {
    EtaLaw e(Kind::XiTimesW);
    e.law_ = std::move(w);
    return e;
}

EtaLaw EtaLaw::table(std::vector<TableRow> rows) {
    if (rows.empty()) throw ConfigError("model.eta_table needs at least one row");
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].upper > rows[i - 1].upper)) throw ConfigError("model.eta_table thresholds must increase");
    if (!std::isinf(rows.back().upper)) throw ConfigError("model.eta_table last threshold must be inf");
    EtaLaw e(Kind::Table);
    e.rows_ = std::move(rows);
    return e;
}

EtaLaw EtaLaw::scaled(ExactValue factor) const {
    EtaLaw e = *this;
    e.scale_ = e.scale_ * factor;
    e.scale_approx_ = e.scale_.approx();
    return e;
}

const ScalarDist& EtaLaw::row_for(double xi) const {
    for (const auto& row : rows_)
        if (xi <= row.upper) return row.law;
    return rows_.back().law;
}

double EtaLaw::draw(double xi, double v) const {
    double eta = 0.0;
    switch (kind_) {
        case Kind::Independent: eta = law_->quantile(v); break;
        case Kind::EqualsXi: eta = xi; break;
        case Kind::XiTimesW: eta = xi * law_->quantile(v); break;
        case Kind::Table: eta = row_for(xi).quantile(v); break;
    }
    return scale_approx_ * eta;
}

std::string EtaLaw::describe() const {
    std::string base;
    switch (kind_) {
        case Kind::Independent: base = "independent " + law_->describe(); break;
        case Kind::EqualsXi: base = "eta=xi"; break;
        case Kind::XiTimesW: base = "eta=xi*W, W ~ " + law_->describe(); break;
        case Kind::Table: {
            base = "table(";
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                base += (i ? "; " : "");
                base += rows_[i].exact_upper ? rows_[i].exact_upper->str() : std::string("inf");
                base += ": " + rows_[i].law.describe();
            }
            base += ")";
            break;
        }
    }
    if (!(scale_ == ExactValue(1))) base += " scaled by " + scale_.str();
    return base;
}

std::vector<ExactValue> EtaLaw::atoms(const ScalarDist& xi) const {
    std::vector<ExactValue> raw;
    switch (kind_) {
        case Kind::Independent: raw = law_->atoms(); break;
        case Kind::EqualsXi: raw = xi.atoms(); break;
        case Kind::XiTimesW:
            for (const auto& a : xi.atoms())
                for (const auto& w : law_->atoms()) raw.push_back(a * w);
            break;
        case Kind::Table:
            // Every row's atoms, whether or not its xi-range carries mass.
            for (const auto& row : rows_)
                for (const auto& b : row.law.atoms()) raw.push_back(b);
            break;
    }
    for (auto& v : raw) v = v * scale_;
    return unique_sorted(std::move(raw));
}

std::vector<ExactValue> EtaLaw::difference_atoms(const ScalarDist& xi) const {
    std::vector<ExactValue> out;
    switch (kind_) {
        case Kind::Independent:
            for (const auto& b : law_->atoms())
                for (const auto& a : xi.atoms()) out.push_back(b * scale_ - a);
            break;
        case Kind::EqualsXi:
            if (scale_ == ExactValue(1)) {
                out.push_back(ExactValue(0));
            } else {
                for (const auto& a : xi.atoms()) out.push_back(a * scale_ - a);
            }
            break;
        case Kind::XiTimesW: {
            // eta - xi = xi (s W - 1): an atom at 0 whenever s W has an atom at 1.
            for (const auto& w : law_->atoms()) {
                const ExactValue factor = w * scale_ - ExactValue(1);
                if (factor.is_zero()) out.push_back(ExactValue(0));
                for (const auto& a : xi.atoms()) out.push_back(a * factor);
            }
            break;
        }
        case Kind::Table:
            for (const auto& a : xi.atoms()) {
                const double av = a.approx();
                for (const auto& row : rows_) {
                    const bool in_row = row.exact_upper ? !(*row.exact_upper < a) : av <= row.upper;
                    if (!in_row) continue;
                    for (const auto& b : row.law.atoms()) out.push_back(b * scale_ - a);
                    break;
                }
            }
            break;
    }
    return unique_sorted(std::move(out));
}

bool EtaLaw::has_continuous_part(const ScalarDist& xi) const {
    switch (kind_) {
        case Kind::Independent: return law_->has_continuous_part();
        case Kind::EqualsXi: return xi.has_continuous_part();
        case Kind::XiTimesW: return xi.has_continuous_part() || law_->has_continuous_part();
        case Kind::Table:
            return std::any_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.law.has_continuous_part(); });
    }
    return true;
}

std::optional<double> EtaLaw::mean(const ScalarDist& xi) const {
    switch (kind_) {
        case Kind::Independent: return scale_approx_ * law_->mean();
        case Kind::EqualsXi: return scale_approx_ * xi.mean();
        case Kind::XiTimesW: return scale_approx_ * xi.mean() * law_->mean();
        case Kind::Table: return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

PairModel gi_g_inf_model(ScalarDist xi, EtaLaw eta, SizeBiasMethod method, std::optional<double> xi_bound) {
    if (!eta.nonzero()) throw ArgumentError("service times must be positive");
    ModelMeta meta = base_meta(xi, eta, xi_bound);
    meta.name = "gi_g_inf";
    meta.kind = ModelKind::GiGInf;

    JumpLaw jumps{{ExactValue(0)}, eta.has_continuous_part(xi)};
    for (const auto& b : eta.atoms(xi)) jumps.atoms.push_back(b);
    jumps.atoms = unique_sorted(std::move(jumps.atoms));
    // X(xi + t) jumps at t = -xi and t = eta - xi.
    JumpLaw shifted{negated(xi.atoms()), xi.has_continuous_part() || eta.has_continuous_part(xi)};
    for (const auto& d : eta.difference_atoms(xi)) shifted.atoms.push_back(d);
    shifted.atoms = unique_sorted(std::move(shifted.atoms));
    meta.jumps = std::move(jumps);
    meta.shifted_jumps = std::move(shifted);
    meta.mark_integral = eta.mean(xi);

    MarkBuilder builder = [eta](double x, std::span<const double> noise) {
        const double service = eta.draw(x, noise[0]);
        if (!(service > 0.0)) return MarkPath::zero();
        return MarkPath::constant(1.0, service);
    };
    return PairModel(std::move(xi), 1, std::move(builder), std::move(meta), method);
}

namespace {

ModelMeta jump_at_origin_meta(const ScalarDist& xi, const EtaLaw& eta, std::optional<double> xi_bound) {
    ModelMeta meta = base_meta(xi, eta, xi_bound);
    if (eta.nonzero()) {
        meta.jumps = JumpLaw{{ExactValue(0)}, false};
        meta.shifted_jumps = JumpLaw{unique_sorted(negated(xi.atoms())), xi.has_continuous_part()};
    } else {
        meta.jumps = JumpLaw{};
        meta.shifted_jumps = JumpLaw{};
    }
    return meta;
}

}  // namespace

PairModel perpetuity_model(double a, ScalarDist xi, EtaLaw eta, SizeBiasMethod method,
                           std::optional<double> xi_bound) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ArgumentError("perpetuity rate a must be positive");
    ModelMeta meta = jump_at_origin_meta(xi, eta, xi_bound);
    meta.name = "perpetuity";
    meta.kind = ModelKind::Perpetuity;
    meta.decay_rate = a;
    if (auto m = eta.mean(xi)) meta.mark_integral = *m / a;

    MarkBuilder builder = [eta, a](double x, std::span<const double> noise) {
        return MarkPath::exp_decay(eta.draw(x, noise[0]), a);
    };
    return PairModel(std::move(xi), 1, std::move(builder), std::move(meta), method);
}

PairModel ctrw_model(ScalarDist xi, EtaLaw eta, SizeBiasMethod method, std::optional<double> xi_bound) {
    ModelMeta meta = jump_at_origin_meta(xi, eta, xi_bound);
    meta.name = "ctrw";
    meta.kind = ModelKind::Ctrw;
    meta.mark_integral = eta.nonzero() ? infinity : 0.0;

    MarkBuilder builder = [eta](double x, std::span<const double> noise) {
        return MarkPath::constant(eta.draw(x, noise[0]), infinity);
    };
    return PairModel(std::move(xi), 1, std::move(builder), std::move(meta), method);
}

}  // namespace immig
