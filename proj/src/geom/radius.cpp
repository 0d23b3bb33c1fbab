#include "skrp/geom/radius.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

#include "skrp/geom/model.hpp"

namespace skrp::geom {

RadiusProfile::RadiusProfile(std::function<double(double)> Q, double a, double tau_min, double tau_max, int nodes)
    : Q_(std::move(Q)), a_(a), lo_(tau_min), hi_(tau_max), tau_ref_(0.5 * (tau_min + tau_max)) {
    if (a == 0.0) throw std::invalid_argument("bundle constant a must be nonzero");
    if (!(tau_min < tau_max)) throw std::invalid_argument("empty interval");
    if (nodes < 2) throw std::invalid_argument("need at least two nodes");
    const double len = hi_ - lo_;
    // stencil half-width 2h must stay inside the interval
    const double h = 1e-3 * len;
    const double first = lo_ + 4 * h;
    const double last = hi_ - 4 * h;
    for (int i = 0; i < nodes; ++i) {
        const double t = first + (last - first) * i / (nodes - 1);
        const double q = Q_(t);
        if (!(q > 0.0)) throw std::domain_error("Q <= 0 at t = " + std::to_string(t));
        tau_.push_back(t);
        log_r_.push_back(log_r(t));
        // increments from t, so the common part of the integral cancels exactly
        const double d = (-integral(t, t + 2 * h) + 8 * integral(t, t + h) - 8 * integral(t, t - h) +
                          integral(t, t - 2 * h)) /
                         (12 * h);
        node_residual_ = std::max(node_residual_, std::abs(d * q / a_ - 1.0));
    }
    monotone_ = true;
    for (std::size_t i = 1; i < log_r_.size(); ++i) {
        const bool step_ok = a_ > 0 ? log_r_[i] > log_r_[i - 1] : log_r_[i] < log_r_[i - 1];
        monotone_ = monotone_ && step_ok;
    }
}

double RadiusProfile::integral(double from, double to) const {
    if (from == to) return 0.0;
    auto f = [this](double s) {
        const double q = Q_(s);
        if (!(q > 0.0)) throw std::domain_error("Q <= 0 at t = " + std::to_string(s));
        return a_ / q;
    };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, from, to, 10, 1e-13);
}

double RadiusProfile::log_r(double t) const { return integral(tau_ref_, t); }

double RadiusProfile::r(double t) const { return std::exp(log_r(t)); }

double RadiusProfile::tau_of_r(double r) const {
    if (!(r > 0.0)) throw std::out_of_range("r must be positive");
    const double target = std::log(r);
    double lo = lo_, hi = hi_;
    const double f_lo = log_r(lo), f_hi = log_r(hi);
    const bool increasing = f_hi > f_lo;
    if (target < std::min(f_lo, f_hi) || target > std::max(f_lo, f_hi)) {
        throw std::out_of_range("r outside the range of the profile on the interval");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const bool below = log_r(mid) < target;
        if (below == increasing) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

RadiusProfile radius_profile(const ModelConfig& config, int nodes) {
    const ScalarFunction Q(solutions::profile_Q(config.profile));
    return RadiusProfile([Q](double t) { return Q(t); }, config.a.to_double(), config.tau_min, config.tau_max, nodes);
}

}  // namespace skrp::geom
