#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "skrp/geom/model.hpp"
#include "skrp/geom/radius.hpp"

namespace skrp::geom {

/// upper: passes when residual <= tolerance. lower: a negative control, passes when residual > tolerance.
enum class Bound { upper, lower };

struct CheckRecord {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    Bound bound = Bound::upper;
    bool pass = false;
    std::string detail;
};

CheckRecord make_check(std::string name, double residual, double tolerance, Bound bound = Bound::upper,
                       std::string detail = {});

struct PointGeometry {
    Curvature curvature;
    Mat hess_tau;
    double laplacian_tau = 0.0;
};

/// Christoffel symbols, Ricci, Hessian and Laplacian of t at a chart point.
PointGeometry curvature_at(const ModelMetric& model, const Vec& x);

/// The same for g/(t - shift)^2.
PointGeometry conformal_curvature_at(const ModelMetric& model, const Vec& x, double shift);

struct EigenReport {
    double hess_offblock = 0.0;   ///< V-H entries of Hess(t) in a g-orthonormal frame, over |Hess(t)|
    double ricci_offblock = 0.0;
    double phi = 0.0, psi = 0.0, lambda = 0.0, mu = 0.0;  ///< measured
    double phi_error = 0.0, psi_error = 0.0, lambda_error = 0.0, mu_error = 0.0;
    double Q = 0.0, laplacian = 0.0;
    double Q_error = 0.0, laplacian_error = 0.0;
};

/// Block structure of Hess(t) and r on V = span(grad t, J grad t) and H = V^perp, with
/// eigenvalues against the symbolic phi, psi, lambda, mu.
EigenReport skrp_eigen_check(const ModelMetric& model, const Vec& x, const PointGeometry& geo);

/// max-norm of T(J., J.) - T in a g-orthonormal frame, over the max-norm of T.
double hermitian_defect(const Mat& T, const Mat& J, const Mat& g);

struct ResidualSet {
    double ric_hes = 0.0;          ///< alpha Hess(t) + r - gamma g
    double ricci_conformal = 0.0;  ///< r_hat against r + (n-2)/t Hess(t) + [Lap(t)/t - (n-1)Q/t^2] g
    double hessian_inverse = 0.0;  ///< Hess_hat(1/t) against -(Hess(t) - Q g/t)/t^2
    std::optional<double> soliton; ///< Hess_hat(b/t) + r_hat - e g_hat
    std::optional<double> f_tau;   ///< both sides of the f(t) soliton equation, f = b/t
};

ResidualSet residual_report(const ModelMetric& model, const Vec& x, const PointGeometry& geo, const PointGeometry& hat);

struct KahlerReport {
    double nabla_J = 0.0;         ///< (g, J)
    double nabla_hat_Jbar = 0.0;  ///< (g/(t-c)^2, opposite J)
    double nabla_hat_J = 0.0;     ///< (g/(t-c)^2, J): expected nonzero
    double closed_g = 0.0;
    double closed_hat = 0.0;
};

KahlerReport check_kahler(const ModelMetric& model, const Vec& x, const PointGeometry& geo, const PointGeometry& shifted_hat);

struct PointResult {
    int index = 0;
    Vec x;
    double tau = 0.0;
    std::vector<CheckRecord> checks;
    EigenReport eigen;
    std::string error;
    bool pass() const;
};

PointResult evaluate_point(const ModelMetric& model, const Vec& x, int index);

enum class Execution { serial, parallel };

/// Results are in point order for either execution mode.
std::vector<PointResult> evaluate_points(const ModelMetric& model, const std::vector<Vec>& points, Execution exec);

struct ConstancyReport {
    double c_mean = 0.0, c_spread = 0.0, c_error = 0.0;
    double kappa_mean = 0.0, kappa_spread = 0.0, kappa_error = 0.0;
    std::vector<double> c_values, kappa_values;
};

/// c = t - Q/(2 phi) and kappa = eps(Lap(t) + lambda Q/phi) from measured values.
ConstancyReport constants_constancy_check(const ModelMetric& model, const std::vector<PointResult>& points,
                                          double kappa_expected);

struct GeometrySuite {
    KappaMeasurement kappa;
    ModelValidation validation;
    std::vector<PointResult> points;
    ConstancyReport constancy;
    double radius_node_residual = 0.0;
    bool radius_monotone = false;
    /// Aggregated records: worst residual per check over all points, plus global checks.
    std::vector<CheckRecord> checks;
    bool pass() const;
};

/// Full pipeline; throws ConfigurationError for invalid configurations.
GeometrySuite run_geometry_suite(const ModelConfig& config, Execution exec = Execution::parallel);

/// point_index,tau,check,residual,tolerance,pass
void write_csv(std::ostream& out, const std::vector<PointResult>& points);

}  // namespace skrp::geom
