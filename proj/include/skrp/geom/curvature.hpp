#pragma once

#include <stdexcept>
#include <vector>

#include "skrp/geom/jet2.hpp"

namespace skrp::geom {

/// Dense n x n matrix over a scalar type that Eigen does not know about.
template <typename S>
struct SquareMatrix {
    int n = 0;
    std::vector<S> a;

    SquareMatrix() = default;
    SquareMatrix(int size, const S& fill) : n(size), a(static_cast<std::size_t>(size * size), fill) {}
    S& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
    const S& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
};

using JetMatrix = SquareMatrix<Jet2>;

Mat values(const JetMatrix& m);

class SingularMetric : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct Curvature {
    int dim = 0;
    Mat g;
    Mat ginv;
    std::vector<Mat> dg;           ///< dg[k] = d_k g
    std::vector<Mat> christoffel;  ///< christoffel[k](i, j) = Gamma^k_ij
    Mat ricci;
};

/// Standard coordinate formulas; second derivatives of g come from the jets.
Curvature curvature_from_jets(const JetMatrix& g);

/// (nabla df)_ij = d_i d_j f - Gamma^k_ij d_k f
Mat hessian(const Curvature& c, const Jet2& f);
/// Hessian of the chart coordinate x^index: -Gamma^index_ij.
Mat hessian_of_coordinate(const Curvature& c, int index);
/// g^ij T_ij
double trace(const Curvature& c, const Mat& T);

/// (nabla_k J)^i_j stored as result[k](i, j), for a (1,1) tensor with J(i, j) = J^i_j.
std::vector<Mat> covariant_derivative(const Curvature& c, const JetMatrix& J);

/// Columns form a g-orthonormal basis: E^T g E = I.
Mat orthonormal_frame(const Mat& g);
/// |T|_g = sqrt(tr(g^-1 T g^-1 T^T)) for a 2-tensor.
double tensor_norm(const Mat& ginv, const Mat& T);
/// |nabla J|_g for a (1,2) tensor stored as above.
double tensor_norm(const Mat& g, const Mat& ginv, const std::vector<Mat>& T);

}  // namespace skrp::geom

namespace skrp::geom {

/// Jets of a metric given as a generic callable f(const S* x) -> SquareMatrix<S>.
template <typename F>
JetMatrix metric_jets_of(F&& f, const Vec& x) {
    const int d = static_cast<int>(x.size());
    std::vector<Jet2> vars;
    vars.reserve(d);
    for (int i = 0; i < d; ++i) vars.push_back(Jet2::variable(x(i), i, d));
    return f(vars.data());
}

}  // namespace skrp::geom
