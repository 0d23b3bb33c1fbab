#include "skrp/geom/curvature.hpp"

#include <cmath>

namespace skrp::geom {

Mat values(const JetMatrix& m) {
    Mat out(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) out(i, j) = m(i, j).value;
    return out;
}

Curvature curvature_from_jets(const JetMatrix& G) {
    const int d = G.n;
    Curvature c;
    c.dim = d;
    c.g = values(G);
    Eigen::FullPivLU<Mat> lu(c.g);
    if (!lu.isInvertible()) throw SingularMetric("metric is singular at the point");
    c.ginv = lu.inverse();

    c.dg.assign(d, Mat::Zero(d, d));
    // ddg[k][l](i, j) = d_k d_l g_ij
    std::vector<std::vector<Mat>> ddg(d, std::vector<Mat>(d, Mat::Zero(d, d)));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const Jet2& e = G(i, j);
            for (int k = 0; k < d; ++k) {
                c.dg[k](i, j) = e.grad(k);
                for (int l = 0; l < d; ++l) ddg[k][l](i, j) = e.hess(k, l);
            }
        }
    }

    // first kind: first[l](i, j) = Gamma_lij, and its derivatives dfirst[m][l](i, j)
    std::vector<Mat> first(d, Mat::Zero(d, d));
    std::vector<std::vector<Mat>> dfirst(d, std::vector<Mat>(d, Mat::Zero(d, d)));
    for (int l = 0; l < d; ++l) {
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                first[l](i, j) = 0.5 * (c.dg[i](j, l) + c.dg[j](i, l) - c.dg[l](i, j));
                for (int m = 0; m < d; ++m) {
                    dfirst[m][l](i, j) = 0.5 * (ddg[m][i](j, l) + ddg[m][j](i, l) - ddg[m][l](i, j));
                }
            }
        }
    }

    c.christoffel.assign(d, Mat::Zero(d, d));
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) c.christoffel[k] += c.ginv(k, l) * first[l];

    // dgamma[m][k](i, j) = d_m Gamma^k_ij
    std::vector<std::vector<Mat>> dgamma(d, std::vector<Mat>(d, Mat::Zero(d, d)));
    for (int m = 0; m < d; ++m) {
        const Mat dginv = -c.ginv * c.dg[m] * c.ginv;
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) dgamma[m][k] += dginv(k, l) * first[l] + c.ginv(k, l) * dfirst[m][l];
    }

    // R_ij = d_k Gamma^k_ij - d_j Gamma^k_ik + Gamma^k_kl Gamma^l_ij - Gamma^k_jl Gamma^l_ik
    c.ricci = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            double r = 0.0;
            for (int k = 0; k < d; ++k) {
                r += dgamma[k][k](i, j) - dgamma[j][k](i, k);
                for (int l = 0; l < d; ++l) {
                    r += c.christoffel[k](k, l) * c.christoffel[l](i, j) - c.christoffel[k](j, l) * c.christoffel[l](i, k);
                }
            }
            c.ricci(i, j) = r;
        }
    }
    c.ricci = 0.5 * (c.ricci + c.ricci.transpose()).eval();
    return c;
}

Mat hessian(const Curvature& c, const Jet2& f) {
    Mat h = f.hess;
    for (int k = 0; k < c.dim; ++k) h -= f.grad(k) * c.christoffel[k];
    return h;
}

Mat hessian_of_coordinate(const Curvature& c, int index) { return -c.christoffel[index]; }

double trace(const Curvature& c, const Mat& T) { return (c.ginv.cwiseProduct(T)).sum(); }

std::vector<Mat> covariant_derivative(const Curvature& c, const JetMatrix& J) {
    const int d = c.dim;
    const Mat Jv = values(J);
    std::vector<Mat> out(d, Mat::Zero(d, d));
    for (int k = 0; k < d; ++k) {
        Mat gk(d, d);  // gk(i, l) = Gamma^i_kl
        for (int i = 0; i < d; ++i)
            for (int l = 0; l < d; ++l) gk(i, l) = c.christoffel[i](k, l);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out[k](i, j) = J(i, j).grad(k);
        // + Gamma^i_kl J^l_j - Gamma^l_kj J^i_l
        out[k] += gk * Jv - Jv * gk;
    }
    return out;
}

Mat orthonormal_frame(const Mat& g) {
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success) throw SingularMetric("metric is not positive definite");
    // g = L L^T, so E = L^-T gives E^T g E = I.
    const Mat L = llt.matrixL();
    return L.transpose().triangularView<Eigen::Upper>().solve(Mat::Identity(g.rows(), g.cols()));
}

double tensor_norm(const Mat& ginv, const Mat& T) {
    return std::sqrt(std::max(0.0, (ginv * T * ginv * T.transpose()).trace()));
}

double tensor_norm(const Mat& g, const Mat& ginv, const std::vector<Mat>& T) {
    const int d = static_cast<int>(g.rows());
    double s = 0.0;
    // |T|^2 = g_ii' g^kk' g^jj' T[k](i, j) T[k'](i', j')
    for (int k = 0; k < d; ++k) {
        for (int kk = 0; kk < d; ++kk) {
            if (ginv(k, kk) == 0.0) continue;
            s += ginv(k, kk) * (g * T[k] * ginv * T[kk].transpose()).trace();
        }
    }
    return std::sqrt(std::max(0.0, s));
}

}  // namespace skrp::geom
