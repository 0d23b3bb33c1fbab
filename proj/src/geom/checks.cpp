#include "skrp/geom/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include "skrp/dualmap/dualmap.hpp"

namespace skrp::geom {

namespace {

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double ratio(double num, double den) { return num / std::max(den, std::numeric_limits<double>::min()); }

Jet2 tau_jet(const Vec& x) { return Jet2::variable(x(0), 0, static_cast<int>(x.size())); }

/// g-orthonormal frame whose first two vectors span V = span(grad t, J grad t).
Mat adapted_frame(const Mat& g, const Mat& ginv, const Mat& J) {
    const int d = static_cast<int>(g.rows());
    Mat E = Mat::Zero(d, d);
    std::vector<Vec> candidates;
    const Vec grad = ginv.col(0);
    candidates.push_back(grad);
    candidates.push_back(J * grad);
    for (int k = 0; k < d; ++k) candidates.push_back(Vec::Unit(d, k));
    int filled = 0;
    for (const Vec& v0 : candidates) {
        if (filled == d) break;
        Vec v = v0;
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < filled; ++j) v -= (E.col(j).dot(g * v)) * E.col(j);
        const double n2 = v.dot(g * v);
        if (n2 < 1e-20 * v0.dot(g * v0)) continue;
        E.col(filled++) = v / std::sqrt(n2);
    }
    return E;
}

struct BlockStats {
    double offblock;
    double v_error;
    double h_error;
    double v_mean;
    double h_mean;
};

BlockStats block_stats(const Mat& T, const Mat& ginv, const Mat& E, double v_expected, double h_expected) {
    const int d = static_cast<int>(T.rows());
    const Mat F = E.transpose() * T * E;
    const double norm = tensor_norm(ginv, T);
    BlockStats s{};
    for (int a = 0; a < 2; ++a)
        for (int b = 2; b < d; ++b) s.offblock = std::max(s.offblock, std::abs(F(a, b)));
    s.offblock = ratio(s.offblock, norm);
    const double rms = norm / std::sqrt(static_cast<double>(d));
    double v_err = std::abs(F(0, 1));
    for (int a = 0; a < 2; ++a) v_err = std::max(v_err, std::abs(F(a, a) - v_expected));
    double h_err = 0.0;
    for (int a = 2; a < d; ++a)
        for (int b = 2; b < d; ++b) h_err = std::max(h_err, std::abs(F(a, b) - (a == b ? h_expected : 0.0)));
    s.v_error = ratio(v_err, std::max(std::abs(v_expected), rms));
    s.h_error = ratio(h_err, std::max(std::abs(h_expected), rms));
    s.v_mean = 0.5 * (F(0, 0) + F(1, 1));
    s.h_mean = 0.0;
    for (int a = 2; a < d; ++a) s.h_mean += F(a, a);
    s.h_mean /= d - 2;
    return s;
}

double relative(const Mat& ginv, const Mat& diff, std::initializer_list<Mat> terms) {
    double scale = 0.0;
    for (const Mat& t : terms) scale = std::max(scale, tensor_norm(ginv, t));
    return ratio(tensor_norm(ginv, diff), scale);
}

double nabla_structure(const Curvature& c, const JetMatrix& J) {
    const int d = c.dim;
    const std::vector<Mat> total = covariant_derivative(c, J);
    std::vector<Mat> partial(d, Mat::Zero(d, d)), connection(d);
    for (int k = 0; k < d; ++k) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) partial[k](i, j) = J(i, j).grad(k);
        connection[k] = total[k] - partial[k];
    }
    const double scale = std::max(tensor_norm(c.g, c.ginv, partial), tensor_norm(c.g, c.ginv, connection));
    return ratio(tensor_norm(c.g, c.ginv, total), scale);
}

}  // namespace

CheckRecord make_check(std::string name, double residual, double tolerance, Bound bound, std::string detail) {
    CheckRecord r{std::move(name), residual, tolerance, bound, false, std::move(detail)};
    r.pass = std::isfinite(residual) && (bound == Bound::upper ? residual <= tolerance : residual > tolerance);
    return r;
}

PointGeometry curvature_at(const ModelMetric& model, const Vec& x) {
    PointGeometry p;
    p.curvature = curvature_from_jets(model.metric_jets(x));
    p.hess_tau = hessian_of_coordinate(p.curvature, 0);
    p.laplacian_tau = trace(p.curvature, p.hess_tau);
    return p;
}

PointGeometry conformal_curvature_at(const ModelMetric& model, const Vec& x, double shift) {
    JetMatrix G = model.metric_jets(x);
    const Jet2 s = tau_jet(x) - shift;
    const Jet2 w = (s * s).reciprocal();
    for (auto& e : G.a) e *= w;
    PointGeometry p;
    p.curvature = curvature_from_jets(G);
    p.hess_tau = hessian_of_coordinate(p.curvature, 0);
    p.laplacian_tau = trace(p.curvature, p.hess_tau);
    return p;
}

EigenReport skrp_eigen_check(const ModelMetric& model, const Vec& x, const PointGeometry& geo) {
    const Curvature& c = geo.curvature;
    const auto sym = model.symbolic_at(x(0));
    const Mat E = adapted_frame(c.g, c.ginv, model.structure_values(x, false));
    const BlockStats hs = block_stats(geo.hess_tau, c.ginv, E, sym.psi, sym.phi);
    const BlockStats rs = block_stats(c.ricci, c.ginv, E, sym.mu, sym.lambda);
    EigenReport r;
    r.hess_offblock = hs.offblock;
    r.ricci_offblock = rs.offblock;
    r.psi = hs.v_mean;
    r.phi = hs.h_mean;
    r.mu = rs.v_mean;
    r.lambda = rs.h_mean;
    r.psi_error = hs.v_error;
    r.phi_error = hs.h_error;
    r.mu_error = rs.v_error;
    r.lambda_error = rs.h_error;
    r.Q = c.ginv(0, 0);
    r.laplacian = geo.laplacian_tau;
    r.Q_error = std::abs(r.Q - sym.Q) / std::abs(sym.Q);
    r.laplacian_error = ratio(std::abs(r.laplacian - sym.laplacian), std::abs(sym.laplacian));
    return r;
}

double hermitian_defect(const Mat& T, const Mat& J, const Mat& g) {
    const Mat E = orthonormal_frame(g);
    return ratio(max_abs(E.transpose() * (J.transpose() * T * J - T) * E), max_abs(E.transpose() * T * E));
}

ResidualSet residual_report(const ModelMetric& model, const Vec& x, const PointGeometry& geo, const PointGeometry& hat) {
    const int n = model.dim();
    const double t = x(0);
    const auto sym = model.symbolic_at(t);
    const Curvature& c = geo.curvature;
    const Mat& g = c.g;
    const Mat& ginv = c.ginv;
    const Mat& r = c.ricci;
    const Mat& H = geo.hess_tau;
    const double Q = ginv(0, 0);
    const double lap = geo.laplacian_tau;
    ResidualSet out;

    out.ric_hes = relative(ginv, sym.alpha * H + r - sym.gamma * g, {sym.alpha * H, r, sym.gamma * g});

    const Mat hess_term = (n - 2) / t * H;
    const Mat metric_term = (lap / t - (n - 1) * Q / (t * t)) * g;
    out.ricci_conformal =
        relative(ginv, hat.curvature.ricci - (r + hess_term + metric_term), {hat.curvature.ricci, r, hess_term, metric_term});

    const Mat hess_inv = hessian(hat.curvature, tau_jet(x).reciprocal());
    const Mat expected_inv = -(H - Q / t * g) / (t * t);
    out.hessian_inverse = relative(ginv, hess_inv - expected_inv, {hess_inv, expected_inv});

    if (const auto& sol = model.config().soliton) {
        const double b = sol->b.to_double();
        const double e = sol->e.to_double();
        const Mat hess_f = hessian(hat.curvature, b * tau_jet(x).reciprocal());
        const Mat& r_hat = hat.curvature.ricci;
        const Mat e_g = e * hat.curvature.g;
        out.soliton = relative(ginv, hess_f + r_hat - e_g, {hess_f, r_hat, e_g});

        const ratcalc::RationalFunction fp = -ratcalc::RationalFunction(sol->b) / (ratcalc::tau() * ratcalc::tau());
        const auto k = dualmap::f_tau_coefficients(n, fp, fp.derivative());
        Mat dtdt = Mat::Zero(n, n);
        dtdt(0, 0) = 1.0;
        const Mat lhs_h = k.hessian.evaluate(t) * H;
        const Mat lhs_d = k.dtau_dtau.evaluate(t) * dtdt;
        const double rhs = e * k.e_slot.evaluate(t) + lap * k.laplacian_slot.evaluate(t) + Q * k.Q_slot.evaluate(t);
        out.f_tau = relative(ginv, r + lhs_h + lhs_d - rhs * g, {r, lhs_h, lhs_d, rhs * g});
    }
    return out;
}

KahlerReport check_kahler(const ModelMetric& model, const Vec& x, const PointGeometry& geo, const PointGeometry& shifted_hat) {
    KahlerReport k;
    const JetMatrix J = model.structure_jets(x, false);
    const JetMatrix Jbar = model.structure_jets(x, true);
    k.nabla_J = nabla_structure(geo.curvature, J);
    k.nabla_hat_Jbar = nabla_structure(shifted_hat.curvature, Jbar);
    k.nabla_hat_J = nabla_structure(shifted_hat.curvature, J);
    k.closed_g = kahler_form_closedness(model, x, false);
    k.closed_hat = kahler_form_closedness(model, x, true, model.c());
    return k;
}

bool PointResult::pass() const {
    return error.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

PointResult evaluate_point(const ModelMetric& model, const Vec& x, int index) {
    PointResult p;
    p.index = index;
    p.x = x;
    p.tau = x(0);
    const Tolerances& tol = model.config().tol;
    try {
        const PointGeometry geo = curvature_at(model, x);
        const PointGeometry hat = conformal_curvature_at(model, x, 0.0);
        const PointGeometry shifted = model.c() == 0.0 ? hat : conformal_curvature_at(model, x, model.c());

        p.eigen = skrp_eigen_check(model, x, geo);
        const EigenReport& e = p.eigen;
        auto& out = p.checks;
        out.push_back(make_check("grad_tau_squared", e.Q_error, tol.grad_tau));
        out.push_back(make_check("hessian_offblock", e.hess_offblock, tol.offblock));
        out.push_back(make_check("ricci_offblock", e.ricci_offblock, tol.offblock));
        out.push_back(make_check("hessian_eigen_phi", e.phi_error, tol.symbolic));
        out.push_back(make_check("hessian_eigen_psi", e.psi_error, tol.symbolic));
        out.push_back(make_check("ricci_eigen_lambda", e.lambda_error, tol.symbolic));
        out.push_back(make_check("ricci_eigen_mu", e.mu_error, tol.symbolic));
        out.push_back(make_check("laplacian_tau", e.laplacian_error, tol.symbolic));

        const ResidualSet rs = residual_report(model, x, geo, hat);
        out.push_back(make_check("ricci_hessian", rs.ric_hes, tol.symbolic));
        out.push_back(make_check("conformal_ricci", rs.ricci_conformal, tol.symbolic));
        out.push_back(make_check("conformal_hessian_inverse", rs.hessian_inverse, tol.symbolic));
        if (rs.soliton) out.push_back(make_check("soliton", *rs.soliton, tol.symbolic));
        if (rs.f_tau) out.push_back(make_check("soliton_f_tau", *rs.f_tau, tol.symbolic));

        const KahlerReport k = check_kahler(model, x, geo, shifted);
        out.push_back(make_check("kahler_nabla_J", k.nabla_J, tol.symbolic));
        out.push_back(make_check("kahler_hat_nabla_Jbar", k.nabla_hat_Jbar, tol.symbolic));
        out.push_back(make_check("negative_hat_nabla_J", k.nabla_hat_J, tol.negative_floor, Bound::lower));
        out.push_back(make_check("closed_omega_g", k.closed_g, tol.closedness));
        out.push_back(make_check("closed_omega_hat", k.closed_hat, tol.closedness));

        const double b = model.config().soliton ? model.config().soliton->b.to_double() : 1.0;
        const Mat Jbar = model.structure_values(x, true);
        const Mat affine = hessian(hat.curvature, b * tau_jet(x).reciprocal()) + hat.curvature.ricci;
        const Mat linear = hessian(hat.curvature, tau_jet(x)) + hat.curvature.ricci;
        out.push_back(make_check("hermitian_affine_inverse", hermitian_defect(affine, Jbar, hat.curvature.g), tol.symbolic));
        out.push_back(make_check("negative_hermitian_linear", hermitian_defect(linear, Jbar, hat.curvature.g),
                                 tol.negative_floor, Bound::lower));
    } catch (const std::exception& ex) {
        p.error = ex.what();
    }
    return p;
}

std::vector<PointResult> evaluate_points(const ModelMetric& model, const std::vector<Vec>& points, Execution exec) {
    const int count = static_cast<int>(points.size());
    std::vector<PointResult> out(points.size());
    if (exec == Execution::serial) {
        for (int i = 0; i < count; ++i) out[i] = evaluate_point(model, points[i], i);
        return out;
    }
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) out[i] = evaluate_point(model, points[i], i);
    return out;
}

ConstancyReport constants_constancy_check(const ModelMetric& model, const std::vector<PointResult>& points,
                                          double kappa_expected) {
    ConstancyReport r;
    const double eps = static_cast<double>(static_cast<int>(model.config().profile.eps));
    double tau_scale = 0.0, lap_scale = 0.0;
    for (const auto& p : points) {
        if (!p.error.empty()) continue;
        const EigenReport& e = p.eigen;
        r.c_values.push_back(p.tau - e.Q / (2 * e.phi));
        r.kappa_values.push_back(eps * (e.laplacian + e.lambda * e.Q / e.phi));
        tau_scale = std::max(tau_scale, std::abs(p.tau));
        lap_scale = std::max(lap_scale, std::abs(e.laplacian));
    }
    if (r.c_values.empty()) {
        r.c_spread = r.c_error = r.kappa_spread = r.kappa_error = std::numeric_limits<double>::infinity();
        return r;
    }
    auto summarize = [](const std::vector<double>& v, double& mean, double& spread) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        spread = *hi - *lo;
    };
    const double c = model.c();
    summarize(r.c_values, r.c_mean, r.c_spread);
    const double c_scale = std::max(std::abs(c), tau_scale);
    r.c_spread /= c_scale;
    r.c_error = std::abs(r.c_mean - c) / c_scale;
    summarize(r.kappa_values, r.kappa_mean, r.kappa_spread);
    const double k_scale = kappa_expected != 0.0 ? std::abs(kappa_expected) : lap_scale;
    r.kappa_spread = ratio(r.kappa_spread, k_scale);
    r.kappa_error = ratio(std::abs(r.kappa_mean - kappa_expected), k_scale);
    return r;
}

bool GeometrySuite::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

GeometrySuite run_geometry_suite(const ModelConfig& config, Execution exec) {
    GeometrySuite s;
    const ModelMetric model(config);
    const Tolerances& tol = config.tol;
    auto& out = s.checks;

    s.kappa = measure_kappa(model.base(), 10, config.seed, std::numeric_limits<double>::infinity());
    out.push_back(make_check("base_kappa_spread", s.kappa.spread, tol.kappa_spread, Bound::upper,
                             "kappa = " + std::to_string(s.kappa.kappa)));
    out.push_back(make_check("base_einstein", s.kappa.einstein_residual, tol.kappa_spread));
    const double kcfg = config.profile.kappa.to_double();
    out.push_back(make_check("kappa_config_vs_base", std::abs(kcfg - s.kappa.kappa) / std::max(std::abs(s.kappa.kappa), 1.0),
                             tol.kappa_spread, Bound::upper,
                             "configured " + config.profile.kappa.to_string() + ", measured " + std::to_string(s.kappa.kappa)));

    const auto points = sample_points(model, config.samples, config.seed);
    s.validation = validate_model(model, points);
    out.push_back(make_check("metric_positive_definite", s.validation.min_eigenvalue, 0.0, Bound::lower));
    out.push_back(make_check("metric_grad_tau_squared", s.validation.grad_tau, tol.grad_tau));
    out.push_back(make_check("metric_closed_omega", s.validation.closedness, tol.closedness));
    out.push_back(make_check("metric_hermitian", s.validation.hermitian, tol.hermitian_g));
    out.push_back(make_check("metric_J_squared", s.validation.j_squared, tol.hermitian_g));
    out.push_back(make_check("connection_curvature", s.validation.connection, tol.closedness));

    s.points = evaluate_points(model, points, exec);
    // worst case per check, in first-seen order
    std::vector<std::string> order;
    std::map<std::string, CheckRecord> worst;
    int errors = 0;
    for (const auto& p : s.points) {
        if (!p.error.empty()) ++errors;
        for (const auto& c : p.checks) {
            auto it = worst.find(c.name);
            if (it == worst.end()) {
                order.push_back(c.name);
                worst.emplace(c.name, c);
                continue;
            }
            CheckRecord& w = it->second;
            const bool worse = c.bound == Bound::upper ? c.residual > w.residual : c.residual < w.residual;
            if (worse || !std::isfinite(c.residual)) {
                w.residual = c.residual;
                w.detail = "worst at point " + std::to_string(p.index);
            }
            w.pass = w.pass && c.pass;
        }
    }
    for (const auto& name : order) out.push_back(worst.at(name));
    out.push_back(make_check("point_evaluation_errors", errors, 0.0));

    s.constancy = constants_constancy_check(model, s.points, s.kappa.kappa);
    out.push_back(make_check("constancy_c_spread", s.constancy.c_spread, tol.constancy));
    out.push_back(make_check("constancy_c_match", s.constancy.c_error, tol.constancy, Bound::upper,
                             "mean c = " + std::to_string(s.constancy.c_mean)));
    out.push_back(make_check("constancy_kappa_spread", s.constancy.kappa_spread, tol.constancy));
    out.push_back(make_check("constancy_kappa_match", s.constancy.kappa_error, tol.constancy, Bound::upper,
                             "mean kappa = " + std::to_string(s.constancy.kappa_mean)));

    const RadiusProfile rp = radius_profile(config);
    s.radius_node_residual = rp.node_residual();
    s.radius_monotone = rp.strictly_monotone();
    out.push_back(make_check("radius_node_residual", s.radius_node_residual, tol.radius));
    out.push_back(make_check("radius_monotone", s.radius_monotone ? 0.0 : 1.0, 0.0));
    return s;
}

void write_csv(std::ostream& out, const std::vector<PointResult>& points) {
    out << "point_index,tau,check,residual,tolerance,pass\n";
    out.precision(12);
    for (const auto& p : points) {
        if (!p.error.empty()) out << p.index << ',' << p.tau << ",evaluation_error,nan,0,false\n";
        for (const auto& c : p.checks) {
            out << p.index << ',' << p.tau << ',' << c.name << ',' << c.residual << ',' << c.tolerance << ','
                << (c.pass ? "true" : "false") << '\n';
        }
    }
}

}  // namespace skrp::geom
