#include "skrp/geom/jet2.hpp"

#include <cmath>
#include <stdexcept>

namespace skrp::geom {

Jet2 Jet2::reciprocal() const {
    if (value == 0.0) throw std::domain_error("jet division by a zero value");
    const double r = 1.0 / value;
    return compose(r, -r * r, 2.0 * r * r * r);
}

Jet2 exp(const Jet2& x) {
    const double e = std::exp(x.value);
    return x.compose(e, e, e);
}

Jet2 log(const Jet2& x) {
    if (!(x.value > 0.0)) throw std::domain_error("jet log of a non-positive value");
    const double r = 1.0 / x.value;
    return x.compose(std::log(x.value), r, -r * r);
}

Jet2 sqrt(const Jet2& x) {
    if (!(x.value > 0.0)) throw std::domain_error("jet sqrt of a non-positive value");
    const double s = std::sqrt(x.value);
    return x.compose(s, 0.5 / s, -0.25 / (s * x.value));
}

Jet2 pow(const Jet2& x, int k) {
    if (k == 0) return Jet2(1.0, x.dim());
    if (k < 0) return pow(x.reciprocal(), -k);
    const double v = x.value;
    const double f2 = k >= 2 ? k * (k - 1) * std::pow(v, k - 2) : 0.0;
    return x.compose(std::pow(v, k), k * std::pow(v, k - 1), f2);
}

}  // namespace skrp::geom
