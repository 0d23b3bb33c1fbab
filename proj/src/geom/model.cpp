#include "skrp/geom/model.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace skrp::geom {

ScalarFunction::ScalarFunction(const ExpExpression& f) : f_(f), f1_(f.derivative()), f2_(f1_.derivative()) {}

namespace {

std::string fmt(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

}  // namespace

void validate_config(const ModelConfig& cfg) {
    const int m = cfg.m();
    if (m < 2) throw ConfigurationError("m must be >= 2");
    if (cfg.dim() > kMaxDim) throw ConfigurationError("m must be <= " + std::to_string(kMaxDim / 2) + " for the geometry suite");
    if (cfg.a.is_zero()) throw ConfigurationError("bundle constant a must be nonzero");
    if (!(cfg.s0 > 0.0)) throw ConfigurationError("base potential scale s0 must be positive");
    if (cfg.samples < 1) throw ConfigurationError("samples must be >= 1");
    if (!(cfg.tau_min < cfg.tau_max)) throw ConfigurationError("tau interval is empty: tau-min must be < tau-max");
    if (!(cfg.margin >= 0.0 && cfg.margin < 0.5)) throw ConfigurationError("margin must lie in [0, 1/2)");
    if (cfg.profile.phi.is_zero()) throw ConfigurationError("trivial (zero) profile");
    const double c = cfg.profile.c.to_double();
    for (double p : {0.0, c, 2 * c}) {
        if (cfg.tau_min <= p && p <= cfg.tau_max) {
            throw ConfigurationError("tau interval [" + fmt(cfg.tau_min) + ", " + fmt(cfg.tau_max) +
                                     "] contains the excluded point t = " + fmt(p) + " (one of 0, c, 2c)");
        }
    }
    const double sigma = cfg.tau_min > c ? 1.0 : -1.0;
    if (static_cast<double>(static_cast<int>(cfg.profile.eps)) != sigma) {
        throw ConfigurationError("eps must equal sgn(t - c) = " + fmt(sigma) + " on the interval, since Q > 0");
    }
    const solutions::SkrpProfile& p = cfg.profile;
    const ExpExpression Q = solutions::profile_Q(p);
    const int grid = 400;
    for (int i = 0; i <= grid; ++i) {
        const double t = cfg.tau_min + (cfg.tau_max - cfg.tau_min) * i / grid;
        const double q = Q.evaluate(t);
        if (!(q > 0.0) || !std::isfinite(q)) {
            throw ConfigurationError("Q = 2(t - c) phi is not positive on the interval (Q(" + fmt(t) + ") = " + fmt(q) + ")");
        }
    }
}

ModelMetric::ModelMetric(const ModelConfig& config) : config_(config) {
    validate_config(config_);
    base_ = BaseMetric{config_.m(), config_.s0, config_.base};
    a_ = config_.a.to_double();
    c_ = config_.profile.c.to_double();
    sigma_ = config_.tau_min > c_ ? 1.0 : -1.0;
    derived_ = solutions::qet_derive(config_.profile);
    phi_ = ScalarFunction(config_.profile.phi);
    Q_ = ScalarFunction(derived_.Q);
}

SymbolicValues ModelMetric::symbolic_at(double t) const {
    SymbolicValues v{};
    v.phi = config_.profile.phi.evaluate(t);
    v.psi = derived_.psi.evaluate(t);
    v.Q = derived_.Q.evaluate(t);
    v.laplacian = derived_.laplacian.evaluate(t);
    v.lambda = derived_.lambda.evaluate(t);
    v.mu = derived_.mu.evaluate(t);
    if (derived_.alpha) {
        v.alpha = derived_.alpha->evaluate(t);
        v.gamma = derived_.gamma->evaluate(t);
    } else {
        // not exp-rational: the same quotient, pointwise
        v.alpha = (v.lambda - v.mu) / (v.psi - v.phi);
        v.gamma = v.alpha * v.phi + v.lambda;
    }
    return v;
}

std::vector<Jet2> ModelMetric::chart_variables(const Vec& x) const {
    const int d = dim();
    std::vector<Jet2> vars;
    vars.reserve(d);
    for (int i = 0; i < d; ++i) vars.push_back(Jet2::variable(x(i), i, d));
    return vars;
}

JetMatrix ModelMetric::metric_jets(const Vec& x) const { return metric(chart_variables(x).data()); }

Mat ModelMetric::metric_values(const Vec& x) const {
    const auto g = metric(x.data());
    Mat out(g.n, g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) out(i, j) = g(i, j);
    return out;
}

JetMatrix ModelMetric::structure_jets(const Vec& x, bool opposite) const {
    return complex_structure(chart_variables(x).data(), opposite);
}

Mat ModelMetric::structure_values(const Vec& x, bool opposite) const {
    const auto J = complex_structure(x.data(), opposite);
    Mat out(J.n, J.n);
    for (int i = 0; i < J.n; ++i)
        for (int j = 0; j < J.n; ++j) out(i, j) = J(i, j);
    return out;
}

std::vector<Vec> sample_points(const ModelMetric& model, int count, std::uint64_t seed) {
    const ModelConfig& cfg = model.config();
    const double len = cfg.tau_max - cfg.tau_min;
    const double gap = cfg.margin * len;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> tau(cfg.tau_min + gap, cfg.tau_max - gap);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    std::uniform_real_distribution<double> box(-cfg.base_box, cfg.base_box);
    const double c = model.c();
    std::vector<Vec> pts;
    int attempts = 0;
    while (static_cast<int>(pts.size()) < count) {
        if (++attempts > 1000 * count) throw ConfigurationError("could not place sample points away from excluded loci");
        Vec x(model.dim());
        x(0) = tau(rng);
        x(1) = angle(rng);
        for (int i = 2; i < model.dim(); ++i) x(i) = box(rng);
        const double t = x(0);
        if (std::abs(t) < gap || std::abs(t - c) < gap || std::abs(t - 2 * c) < gap) continue;
        const auto v = model.symbolic_at(t);
        const double scale = std::abs(v.phi) + std::abs(v.psi);
        if (std::abs(v.phi) < 1e-8 * scale || std::abs(v.psi - v.phi) < 1e-6 * scale) continue;
        pts.push_back(x);
    }
    return pts;
}

double kahler_form_closedness(const ModelMetric& model, const Vec& x, bool opposite, std::optional<double> shift) {
    const int d = model.dim();
    const double step = 1e-5;
    auto omega = [&](const Vec& y) -> Mat {
        Mat g = model.metric_values(y);
        if (shift) g /= (y(0) - *shift) * (y(0) - *shift);
        return model.structure_values(y, opposite).transpose() * g;
    };
    std::vector<Mat> domega(d);
    double scale = 1e-300;
    for (int k = 0; k < d; ++k) {
        Vec p = x, q = x;
        p(k) += step;
        q(k) -= step;
        domega[k] = (omega(p) - omega(q)) / (2 * step);
        scale = std::max(scale, domega[k].cwiseAbs().maxCoeff());
    }
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = j + 1; k < d; ++k)
                worst = std::max(worst, std::abs(domega[i](j, k) + domega[j](k, i) + domega[k](i, j)));
    return worst / scale;
}

ModelValidation validate_model(const ModelMetric& model, const std::vector<Vec>& points) {
    ModelValidation v;
    v.min_eigenvalue = std::numeric_limits<double>::infinity();
    const int d = model.dim();
    for (const Vec& x : points) {
        const Mat g = model.metric_values(x);
        Eigen::SelfAdjointEigenSolver<Mat> eig(g);
        v.min_eigenvalue = std::min(v.min_eigenvalue, eig.eigenvalues().minCoeff());
        const double Q = model.Q()(x(0));
        const Mat ginv = g.inverse();
        v.grad_tau = std::max(v.grad_tau, std::abs(ginv(0, 0) - Q) / Q);
        v.closedness = std::max(v.closedness, kahler_form_closedness(model, x, false));
        if (eig.eigenvalues().minCoeff() > 0.0) {
            const Mat E = orthonormal_frame(g);
            const Mat Einv = E.inverse();
            const Mat J = model.structure_values(x, false);
            v.hermitian = std::max(v.hermitian, (E.transpose() * (J.transpose() * g * J - g) * E).cwiseAbs().maxCoeff());
            const Mat F = Einv * J * E;
            v.j_squared = std::max(v.j_squared, (F * F + Mat::Identity(d, d)).cwiseAbs().maxCoeff());
        }
    }
    v.connection = validate_connection(model.base(), model.a(), 10, 1, 1e300).residual;
    return v;
}

ModelMetric build_model_metric(const ModelConfig& config, ModelValidation* out) {
    ModelMetric model(config);
    const auto points = sample_points(model, std::max(config.samples, 1), config.seed);
    const ModelValidation v = validate_model(model, points);
    if (out) *out = v;
    const Tolerances& tol = config.tol;
    auto fail = [](const std::string& what, double value, double bound) {
        throw ModelConstructionError(what + " failed: " + fmt(value) + " vs bound " + fmt(bound));
    };
    if (!(v.min_eigenvalue > 0.0)) fail("positive definiteness of g", v.min_eigenvalue, 0.0);
    if (v.grad_tau > tol.grad_tau) fail("|grad t|^2 = Q", v.grad_tau, tol.grad_tau);
    if (v.closedness > tol.closedness) fail("d omega_g = 0", v.closedness, tol.closedness);
    if (v.hermitian > tol.hermitian_g) fail("g(J., J.) = g", v.hermitian, tol.hermitian_g);
    if (v.j_squared > tol.hermitian_g) fail("J^2 = -1", v.j_squared, tol.hermitian_g);
    if (v.connection > tol.closedness) fail("d eta = 2a omega_h", v.connection, tol.closedness);
    return model;
}

}  // namespace skrp::geom
