#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skrp/dualmap/dualmap.hpp"
#include "skrp/geom/base_metric.hpp"
#include "skrp/solutions/profile.hpp"

namespace skrp::geom {

using ratcalc::ExpExpression;
using ratcalc::Rational;

/// A function of t with its first two derivatives, evaluable on doubles and jets.
class ScalarFunction {
public:
    ScalarFunction() = default;
    explicit ScalarFunction(const ExpExpression& f);

    double operator()(double t) const { return f_.evaluate(t); }
    Jet2 operator()(const Jet2& t) const { return t.compose(f_.evaluate(t.value), f1_.evaluate(t.value), f2_.evaluate(t.value)); }
    double derivative(double t) const { return f1_.evaluate(t); }
    double second_derivative(double t) const { return f2_.evaluate(t); }
    const ExpExpression& expression() const { return f_; }

private:
    ExpExpression f_, f1_, f2_;
};

struct Tolerances {
    double symbolic = 1e-6;        ///< AD against symbolic values, relative
    double offblock = 1e-7;        ///< off-block entries of Hess(t) and r, relative to the norm
    double closedness = 1e-7;      ///< finite-difference d omega
    double grad_tau = 1e-10;       ///< |grad t|^2 = Q, relative
    double hermitian_g = 1e-12;    ///< g(J., J.) = g
    double kappa_spread = 1e-8;    ///< base Einstein constant across points
    double constancy = 1e-6;       ///< recovered c and kappa
    double negative_floor = 1e-3;  ///< negative controls must exceed this
    double radius = 1e-9;          ///< quadrature node residual
};

/// Everything that fixes the model metric
///   g = 2|t - c| h + dt^2/Q + (Q/a^2)(dtheta + eta)^2
/// on the chart (t, theta, x_1, y_1, ...), and its sampling.
struct ModelConfig {
    solutions::SkrpProfile profile;  ///< m, c, kappa, eps and phi; Q = 2(t - c) phi
    Rational a{1};
    double s0 = 1.0;
    BaseKind base = BaseKind::fubini_study;
    std::optional<dualmap::SolitonSpec> soliton;
    double tau_min = 0.5;
    double tau_max = 2.0;
    int samples = 20;
    std::uint64_t seed = 1;
    double margin = 0.05;    ///< fraction of the interval kept clear at each end and around excluded points
    double base_box = 0.5;   ///< base coordinates sampled in [-box, box]
    Tolerances tol;

    int m() const { return profile.m; }
    int dim() const { return 2 * profile.m; }
};

/// Throws ConfigurationError naming the violated constraint: interval touching
/// 0, c or 2c, Q <= 0, sign change of t - c, eps != sgn(t - c), or m out of range.
void validate_config(const ModelConfig& config);

/// Symbolic quantities at a value of t.
struct SymbolicValues {
    double phi, psi, Q, laplacian, lambda, mu, alpha, gamma;
};

class ModelMetric {
public:
    /// Validates the configuration only; see build_model_metric for the geometric validation.
    explicit ModelMetric(const ModelConfig& config);

    const ModelConfig& config() const { return config_; }
    const BaseMetric& base() const { return base_; }
    int dim() const { return config_.dim(); }
    double sigma() const { return sigma_; }
    double a() const { return a_; }
    double c() const { return c_; }
    const solutions::DerivedFunctions& derived() const { return derived_; }
    const ScalarFunction& Q() const { return Q_; }
    const ScalarFunction& phi() const { return phi_; }
    SymbolicValues symbolic_at(double t) const;

    template <typename S>
    SquareMatrix<S> metric(const S* x) const;
    /// J, or the opposite structure (J on horizontal lifts, -J on the vertical span) when `opposite`.
    template <typename S>
    SquareMatrix<S> complex_structure(const S* x, bool opposite) const;

    std::vector<Jet2> chart_variables(const Vec& x) const;
    JetMatrix metric_jets(const Vec& x) const;
    Mat metric_values(const Vec& x) const;
    JetMatrix structure_jets(const Vec& x, bool opposite) const;
    Mat structure_values(const Vec& x, bool opposite) const;

private:
    ModelConfig config_;
    BaseMetric base_;
    double a_ = 1.0;
    double c_ = 0.0;
    double sigma_ = 1.0;
    solutions::DerivedFunctions derived_;
    ScalarFunction phi_, Q_;
    ExpExpression alpha_pointwise_num_, alpha_pointwise_den_;
};

class ModelConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Deterministic sample points for (config.samples, config.seed), avoiding the
/// excluded loci t in {0, c, 2c}, phi = 0 and psi = phi by the configured margin.
std::vector<Vec> sample_points(const ModelMetric& model, int count, std::uint64_t seed);

struct ModelValidation {
    double min_eigenvalue = 0.0;   ///< smallest eigenvalue of g over points (> 0)
    double grad_tau = 0.0;         ///< max | |grad t|^2 - Q | / Q
    double closedness = 0.0;       ///< max finite-difference |d omega_g|
    double hermitian = 0.0;        ///< max |g(J., J.) - g| / |g|
    double j_squared = 0.0;        ///< max |J^2 + 1|
    double connection = 0.0;       ///< d eta = 2a omega_h residual
};

/// Builds the metric and validates it at `points`: positivity, |grad t|^2 = Q,
/// d omega_g = 0, J-Hermitian g and J^2 = -1. Throws ModelConstructionError naming the failed identity.
ModelMetric build_model_metric(const ModelConfig& config, ModelValidation* validation = nullptr);
ModelValidation validate_model(const ModelMetric& model, const std::vector<Vec>& points);

/// omega(X, Y) = g'(JX, Y) with g' = g, or g/(t - shift)^2 when a shift is given; d omega by
/// central differences, relative to the largest first derivative of omega.
double kahler_form_closedness(const ModelMetric& model, const Vec& x, bool opposite,
                              std::optional<double> conformal_shift = std::nullopt);

// ---- template definitions

template <typename S>
SquareMatrix<S> ModelMetric::metric(const S* x) const {
    const int d = dim();
    const int nb = base_.dim();
    const S& t = x[0];
    const S zero = t * 0.0;
    const S Q = Q_(t);
    const S v = Q / (a_ * a_);
    const S horizontal = 2.0 * sigma_ * (t - c_);
    const auto h = base_.metric(x + 2);
    const auto eta = base_.connection(a_, x + 2);
    SquareMatrix<S> g(d, zero);
    g(0, 0) = 1.0 / Q;
    g(1, 1) = v;
    for (int i = 0; i < nb; ++i) {
        g(1, 2 + i) = v * eta[i];
        g(2 + i, 1) = g(1, 2 + i);
        for (int j = 0; j < nb; ++j) g(2 + i, 2 + j) = horizontal * h(i, j) + v * eta[i] * eta[j];
    }
    return g;
}

template <typename S>
SquareMatrix<S> ModelMetric::complex_structure(const S* x, bool opposite) const {
    const int d = dim();
    const int nb = base_.dim();
    const S& t = x[0];
    const S zero = t * 0.0;
    const S Q = Q_(t);
    const double vs = opposite ? -sigma_ : sigma_;
    const auto eta = base_.connection(a_, x + 2);
    const Mat Jb = base_complex_structure(nb);
    SquareMatrix<S> J(d, zero);
    // column j holds the image of d_j
    J(1, 0) = vs * a_ / Q;
    J(0, 1) = -vs * Q / a_;
    for (int B = 0; B < nb; ++B) {
        // d_B = lift(d_B) + eta_B d_theta, and J lift(d_B) = lift(Jb d_B)
        S theta_part = zero;
        for (int C = 0; C < nb; ++C) {
            if (Jb(C, B) == 0.0) continue;
            J(2 + C, 2 + B) = zero + Jb(C, B);
            theta_part -= Jb(C, B) * eta[C];
        }
        J(1, 2 + B) = theta_part;
        J(0, 2 + B) = -vs * eta[B] * Q / a_;
    }
    return J;
}

}  // namespace skrp::geom
