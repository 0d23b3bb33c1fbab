#pragma once

#include <functional>
#include <vector>

namespace skrp::geom {

struct ModelConfig;

/// log r(t) = int_{t_ref}^{t} a/Q, with t_ref the interval midpoint.
class RadiusProfile {
public:
    /// Throws std::domain_error if Q <= 0 is met at a node or a quadrature point.
    RadiusProfile(std::function<double(double)> Q, double a, double tau_min, double tau_max, int nodes = 33);

    double log_r(double t) const;
    double r(double t) const;
    /// Inverse by bisection; throws std::out_of_range outside the tabulated range of r.
    double tau_of_r(double r) const;

    const std::vector<double>& nodes() const { return tau_; }
    const std::vector<double>& log_r_table() const { return log_r_; }
    double tau_ref() const { return tau_ref_; }
    /// max over nodes of |d log r/dt * Q/a - 1|, derivative by a five-point stencil.
    double node_residual() const { return node_residual_; }
    bool strictly_monotone() const { return monotone_; }

private:
    double integral(double from, double to) const;

    std::function<double(double)> Q_;
    double a_;
    double lo_, hi_, tau_ref_;
    std::vector<double> tau_, log_r_;
    double node_residual_ = 0.0;
    bool monotone_ = false;
};

RadiusProfile radius_profile(const ModelConfig& config, int nodes = 33);

}  // namespace skrp::geom
