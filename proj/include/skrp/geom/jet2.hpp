#pragma once

#include <Eigen/Dense>

namespace skrp::geom {

/// Upper bound on the chart dimension; jets live on the stack.
inline constexpr int kMaxDim = 12;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

/// Value, gradient and Hessian of a scalar at a point of a d-dimensional chart.
struct Jet2 {
    double value = 0.0;
    Vec grad;
    Mat hess;

    Jet2() = default;
    Jet2(double v, int d) : value(v), grad(Vec::Zero(d)), hess(Mat::Zero(d, d)) {}

    static Jet2 variable(double v, int index, int d) {
        Jet2 j(v, d);
        j.grad(index) = 1.0;
        return j;
    }

    int dim() const { return static_cast<int>(grad.size()); }

    /// f(x) given f, f', f'' at x.value.
    Jet2 compose(double f, double f1, double f2) const {
        Jet2 out;
        out.value = f;
        out.grad = f1 * grad;
        out.hess = f1 * hess + f2 * grad * grad.transpose();
        return out;
    }

    Jet2& operator+=(const Jet2& b) {
        value += b.value;
        grad += b.grad;
        hess += b.hess;
        return *this;
    }
    Jet2& operator-=(const Jet2& b) {
        value -= b.value;
        grad -= b.grad;
        hess -= b.hess;
        return *this;
    }
    Jet2& operator*=(const Jet2& b) {
        hess = b.value * hess + value * b.hess + grad * b.grad.transpose() + b.grad * grad.transpose();
        grad = b.value * grad + value * b.grad;
        value *= b.value;
        return *this;
    }
    Jet2& operator/=(const Jet2& b) { return *this *= b.reciprocal(); }
    Jet2& operator+=(double s) {
        value += s;
        return *this;
    }
    Jet2& operator-=(double s) {
        value -= s;
        return *this;
    }
    Jet2& operator*=(double s) {
        value *= s;
        grad *= s;
        hess *= s;
        return *this;
    }
    Jet2& operator/=(double s) { return *this *= 1.0 / s; }

    Jet2 operator-() const {
        Jet2 out = *this;
        out *= -1.0;
        return out;
    }

    /// Throws std::domain_error at a zero value.
    Jet2 reciprocal() const;
};

inline Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
inline Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
inline Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
inline Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }
inline Jet2 operator+(Jet2 a, double s) { return a += s; }
inline Jet2 operator+(double s, Jet2 a) { return a += s; }
inline Jet2 operator-(Jet2 a, double s) { return a -= s; }
inline Jet2 operator-(double s, const Jet2& a) { return -a + s; }
inline Jet2 operator*(Jet2 a, double s) { return a *= s; }
inline Jet2 operator*(double s, Jet2 a) { return a *= s; }
inline Jet2 operator/(Jet2 a, double s) { return a /= s; }
inline Jet2 operator/(double s, const Jet2& a) { return a.reciprocal() * s; }

Jet2 exp(const Jet2& x);
/// Throws std::domain_error for a non-positive value.
Jet2 log(const Jet2& x);
Jet2 sqrt(const Jet2& x);
Jet2 pow(const Jet2& x, int k);

inline double value_of(double x) { return x; }
inline double value_of(const Jet2& x) { return x.value; }

}  // namespace skrp::geom
