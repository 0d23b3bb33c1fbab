#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skrp/geom/curvature.hpp"

namespace skrp::geom {

enum class BaseKind { fubini_study, flat };

/// Kaehler base on a coordinate patch of C^(m-1), real coordinates
/// (x_1, y_1, ..., x_{m-1}, y_{m-1}), potential u = s0 log(1 + |z|^2) (or s0 |z|^2 when flat).
/// Convention: h = Re sum u_{i jbar} dz_i dzbar_j, so h = s0 * identity at z = 0, and
/// omega_h = h(J., .) = (i/2) ddbar u.
struct BaseMetric {
    int m = 2;
    double s0 = 1.0;
    BaseKind kind = BaseKind::fubini_study;

    int dim() const { return 2 * (m - 1); }

    /// h at the point z (dim() coordinates starting at z[0]).
    template <typename S>
    SquareMatrix<S> metric(const S* z) const;

    /// eta = a * Im(sum u_{z_j} dz_j); d eta = 2a omega_h.
    template <typename S>
    std::vector<S> connection(double a, const S* z) const;
};

/// J d/dx_j = d/dy_j, J d/dy_j = -d/dx_j, as J(i, j) = J^i_j.
Mat base_complex_structure(int dim);
/// omega_ij = h(J d_i, d_j)
Mat base_kahler_form(const BaseMetric& base, const double* z);

class ConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct KappaMeasurement {
    double kappa = 0.0;
    double spread = 0.0;            ///< (max - min)/|mean| over points, or 0 for a flat base
    double einstein_residual = 0.0; ///< max |r - kappa h| / |r|
    std::vector<double> per_point;
};

/// Measures the Einstein constant of h from jet curvature at `points` random points.
/// Throws ConfigurationError when the spread or the Einstein residual exceeds `tolerance`.
KappaMeasurement measure_kappa(const BaseMetric& base, int points = 10, std::uint64_t seed = 1,
                               double tolerance = 1e-8);

struct ConnectionCheck {
    double residual = 0.0;  ///< max |d eta - 2a omega| / max |2a omega|, finite differences
    int points = 0;
};

class ConventionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite-difference check of d eta = 2a omega_h; throws ConventionError above `tolerance`.
ConnectionCheck validate_connection(const BaseMetric& base, double a, int points = 10, std::uint64_t seed = 1,
                                    double tolerance = 1e-7);

/// Max over points of |d omega_h| / max |d_k omega_ij|, finite differences.
double base_closedness_residual(const BaseMetric& base, int points = 10, std::uint64_t seed = 1);

/// Jets of h at z, one variable per base coordinate.
JetMatrix base_metric_jets(const BaseMetric& base, const Vec& z);

// ---- template definitions

template <typename S>
SquareMatrix<S> BaseMetric::metric(const S* z) const {
    const int n = m - 1;
    const S zero = z[0] * 0.0;
    S r2 = zero;
    for (int i = 0; i < 2 * n; ++i) r2 += z[i] * z[i];
    const bool fs = kind == BaseKind::fubini_study;
    const S w = fs ? r2 + 1.0 : zero + 1.0;
    const S inv_w2 = 1.0 / (w * w);
    SquareMatrix<S> h(2 * n, zero);
    for (int i = 0; i < n; ++i) {
        const S& xi = z[2 * i];
        const S& yi = z[2 * i + 1];
        for (int j = 0; j < n; ++j) {
            const S& xj = z[2 * j];
            const S& yj = z[2 * j + 1];
            // u_{i jbar} = s0 [w delta_ij - zbar_i z_j] / w^2 = P + iS
            S P = (i == j ? w : zero);
            S Sij = zero;
            if (fs) {
                P -= xi * xj + yi * yj;
                Sij = -(xi * yj - yi * xj);
            }
            P = s0 * P * inv_w2;
            Sij = s0 * Sij * inv_w2;
            h(2 * i, 2 * j) = P;
            h(2 * i + 1, 2 * j + 1) = P;
            h(2 * i, 2 * j + 1) = Sij;
            h(2 * i + 1, 2 * j) = -Sij;
        }
    }
    return h;
}

template <typename S>
std::vector<S> BaseMetric::connection(double a, const S* z) const {
    const int n = m - 1;
    S r2 = z[0] * 0.0;
    for (int i = 0; i < 2 * n; ++i) r2 += z[i] * z[i];
    const S scale = kind == BaseKind::fubini_study ? (a * s0) / (r2 + 1.0) : r2 * 0.0 + a * s0;
    std::vector<S> eta(static_cast<std::size_t>(2 * n), r2 * 0.0);
    for (int i = 0; i < n; ++i) {
        // Im(zbar dz) = x dy - y dx
        eta[2 * i] = -z[2 * i + 1] * scale;
        eta[2 * i + 1] = z[2 * i] * scale;
    }
    return eta;
}

}  // namespace skrp::geom
