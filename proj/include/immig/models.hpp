#pragma once

#include "immig/dist.hpp"
#include "immig/exact.hpp"
#include "immig/paths.hpp"
#include "immig/rng.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace immig {

/// Declared law of jump locations: the deterministic atoms t with
/// P{jump at t} > 0, plus whether jumps also occur at diffuse locations.
struct JumpLaw {
    std::vector<ExactValue> atoms;
    bool continuous_part = false;
};

enum class ModelKind { GiGInf, Perpetuity, Ctrw, Custom };
enum class SizeBiasMethod { Automatic, Exact, Rejection };

struct ModelMeta {
    std::string name;
    ModelKind kind = ModelKind::Custom;
    double mu = 0.0;                    // E xi
    std::optional<double> xi_bound;     // enables rejection size-biasing
    std::vector<ExactValue> lattice;    // atoms of the discrete component of xi
    std::optional<JumpLaw> jumps;       // fixed jump times of X
    std::optional<JumpLaw> shifted_jumps;  // fixed jump times of X(xi + .)
    bool independent = false;           // X independent of xi
    std::optional<double> mark_integral;  // E of the integral of X over [0, inf)
    std::optional<double> decay_rate;   // perpetuity discount rate
};

/// Maps (xi, auxiliary uniforms) to a mark path; must be deterministic.
using MarkBuilder = std::function<MarkPath(double xi, std::span<const double> noise)>;

struct MarkedDraw {
    MarkPath mark;
    double xi = 0.0;
};

/// Joint law of (X, xi) with X = g(xi, V), V a vector of independent uniforms.
class PairModel {
  public:
    PairModel(ScalarDist xi, std::size_t noise_dim, MarkBuilder builder, ModelMeta meta,
              SizeBiasMethod method = SizeBiasMethod::Automatic);

    [[nodiscard]] const ScalarDist& xi_dist() const { return xi_; }
    [[nodiscard]] const ModelMeta& meta() const { return meta_; }
    [[nodiscard]] double mu() const { return meta_.mu; }
    [[nodiscard]] std::size_t noise_dim() const { return noise_dim_; }
    [[nodiscard]] SizeBiasMethod size_bias_method() const { return method_; }

    [[nodiscard]] MarkPath build_mark(double xi, std::span<const double> noise) const;

    /// One draw of (X, xi) from the base law.
    MarkedDraw sample_pair(Rng& rng) const;

    /// One draw of (X0, xi0) with P{xi0 <= x, X0 in .} = (1/mu) E[xi; xi <= x, X in .].
    MarkedDraw size_biased_pair(Rng& rng) const;

    /// Copy with a different size-biasing method (validated).
    [[nodiscard]] PairModel with_size_bias(SizeBiasMethod method) const;
    /// Copy whose declared jump laws are replaced.
    [[nodiscard]] PairModel with_jump_laws(JumpLaw jumps, JumpLaw shifted_jumps) const;

  private:
    MarkPath mark_from(double xi, Rng& rng) const;

    ScalarDist xi_;
    std::optional<ScalarDist> biased_xi_;
    std::size_t noise_dim_;
    MarkBuilder builder_;
    ModelMeta meta_;
    SizeBiasMethod method_;
};

/// How eta (service time, amplitude, jump size) depends on xi.
class EtaLaw {
  public:
    enum class Kind { Independent, EqualsXi, XiTimesW, Table };

    struct TableRow {
        double upper = infinity;          // row applies to xi <= upper
        std::optional<ExactValue> exact_upper;
        ScalarDist law;
    };

    static EtaLaw independent(ScalarDist law);
    static EtaLaw equals_xi();
    static EtaLaw xi_times(ScalarDist w);
    static EtaLaw table(std::vector<TableRow> rows);

    /// eta multiplied by a constant factor (exact).
    [[nodiscard]] EtaLaw scaled(ExactValue factor) const;

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] double draw(double xi, double v) const;
    [[nodiscard]] std::string describe() const;

    /// Atoms of eta given the lattice atoms of xi.
    [[nodiscard]] std::vector<ExactValue> atoms(const ScalarDist& xi) const;
    /// Atoms of eta - xi.
    [[nodiscard]] std::vector<ExactValue> difference_atoms(const ScalarDist& xi) const;
    [[nodiscard]] bool has_continuous_part(const ScalarDist& xi) const;
    /// E eta when available in closed form.
    [[nodiscard]] std::optional<double> mean(const ScalarDist& xi) const;
    /// P{eta != 0} > 0.
    [[nodiscard]] bool nonzero() const { return scale_approx_ != 0.0; }

  private:
    explicit EtaLaw(Kind k) : kind_(k) {}
    const ScalarDist& row_for(double xi) const;

    Kind kind_;
    std::optional<ScalarDist> law_;
    std::vector<TableRow> rows_;
    ExactValue scale_{1};
    double scale_approx_ = 1.0;
};

/// GI/G/inf queue: X(t) = 1{0 <= t < eta}, eta the service time.
PairModel gi_g_inf_model(ScalarDist xi, EtaLaw eta, SizeBiasMethod method = SizeBiasMethod::Automatic,
                         std::optional<double> xi_bound = std::nullopt);

/// Discounted immigration: X(t) = eta exp(-a t).
PairModel perpetuity_model(double a, ScalarDist xi, EtaLaw eta, SizeBiasMethod method = SizeBiasMethod::Automatic,
                           std::optional<double> xi_bound = std::nullopt);

/// Continuous-time random walk: X(t) = eta for t >= 0.
PairModel ctrw_model(ScalarDist xi, EtaLaw eta, SizeBiasMethod method = SizeBiasMethod::Automatic,
                     std::optional<double> xi_bound = std::nullopt);

}  // namespace immig
