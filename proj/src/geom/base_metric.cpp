#include "skrp/geom/base_metric.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace skrp::geom {

namespace {

std::vector<Vec> random_base_points(int dim, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-0.5, 0.5);
    std::vector<Vec> pts;
    for (int p = 0; p < count; ++p) {
        Vec z(dim);
        for (int i = 0; i < dim; ++i) z(i) = box(rng);
        pts.push_back(z);
    }
    return pts;
}

Mat base_metric_values(const BaseMetric& base, const Vec& z) {
    const auto h = base.metric(z.data());
    Mat out(h.n, h.n);
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j) out(i, j) = h(i, j);
    return out;
}

}  // namespace

Mat base_complex_structure(int dim) {
    Mat J = Mat::Zero(dim, dim);
    for (int i = 0; i < dim / 2; ++i) {
        J(2 * i + 1, 2 * i) = 1.0;
        J(2 * i, 2 * i + 1) = -1.0;
    }
    return J;
}

Mat base_kahler_form(const BaseMetric& base, const double* z) {
    Vec zz = Eigen::Map<const Vec>(z, base.dim());
    return base_complex_structure(base.dim()).transpose() * base_metric_values(base, zz);
}

JetMatrix base_metric_jets(const BaseMetric& base, const Vec& z) {
    const int d = base.dim();
    std::vector<Jet2> vars;
    for (int i = 0; i < d; ++i) vars.push_back(Jet2::variable(z(i), i, d));
    return base.metric(vars.data());
}

KappaMeasurement measure_kappa(const BaseMetric& base, int points, std::uint64_t seed, double tolerance) {
    KappaMeasurement out;
    const int d = base.dim();
    for (const Vec& z : random_base_points(d, points, seed)) {
        const Curvature c = curvature_from_jets(base_metric_jets(base, z));
        const double k = trace(c, c.ricci) / d;
        const double rn = tensor_norm(c.ginv, c.ricci);
        const double res = tensor_norm(c.ginv, c.ricci - k * c.g);
        out.einstein_residual = std::max(out.einstein_residual, rn > 1e-300 ? res / rn : res);
        out.per_point.push_back(k);
    }
    const auto [lo, hi] = std::minmax_element(out.per_point.begin(), out.per_point.end());
    double mean = 0.0;
    for (double k : out.per_point) mean += k;
    mean /= static_cast<double>(out.per_point.size());
    const double magnitude = std::max(std::abs(*lo), std::abs(*hi));
    if (magnitude < 1e-12) {
        out.kappa = 0.0;
        out.spread = 0.0;
    } else {
        out.kappa = mean;
        out.spread = (*hi - *lo) / std::abs(mean);
    }
    if (out.spread > tolerance || out.einstein_residual > tolerance) {
        std::ostringstream msg;
        msg << "base metric is not Einstein to tolerance " << tolerance << ": kappa spread " << out.spread
            << ", Einstein residual " << out.einstein_residual;
        throw ConfigurationError(msg.str());
    }
    return out;
}

ConnectionCheck validate_connection(const BaseMetric& base, double a, int points, std::uint64_t seed,
                                    double tolerance) {
    const int d = base.dim();
    const double step = 1e-5;
    ConnectionCheck out;
    for (const Vec& z : random_base_points(d, points, seed)) {
        // deta(k, j) = d_k eta_j, by central differences
        Mat deta(d, d);
        for (int k = 0; k < d; ++k) {
            Vec zp = z, zm = z;
            zp(k) += step;
            zm(k) -= step;
            const auto ep = base.connection(a, zp.data());
            const auto em = base.connection(a, zm.data());
            for (int j = 0; j < d; ++j) deta(k, j) = (ep[j] - em[j]) / (2 * step);
        }
        const Mat d_eta = deta - deta.transpose();
        const Mat target = 2.0 * a * base_kahler_form(base, z.data());
        const double scale = std::max(target.cwiseAbs().maxCoeff(), 1e-300);
        out.residual = std::max(out.residual, (d_eta - target).cwiseAbs().maxCoeff() / scale);
        ++out.points;
    }
    if (out.residual > tolerance) {
        std::ostringstream msg;
        msg << "d eta != 2a omega_h: relative residual " << out.residual << " exceeds " << tolerance;
        throw ConventionError(msg.str());
    }
    return out;
}

double base_closedness_residual(const BaseMetric& base, int points, std::uint64_t seed) {
    const int d = base.dim();
    const double step = 1e-5;
    double worst = 0.0;
    for (const Vec& z : random_base_points(d, points, seed)) {
        std::vector<Mat> domega(d);
        double scale = 1e-300;
        for (int k = 0; k < d; ++k) {
            Vec zp = z, zm = z;
            zp(k) += step;
            zm(k) -= step;
            domega[k] = (base_kahler_form(base, zp.data()) - base_kahler_form(base, zm.data())) / (2 * step);
            scale = std::max(scale, domega[k].cwiseAbs().maxCoeff());
        }
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    const double v = domega[i](j, k) + domega[j](k, i) + domega[k](i, j);
                    worst = std::max(worst, std::abs(v) / std::max(scale, 1.0));
                }
    }
    return worst;
}

}  // namespace skrp::geom
