#pragma once

#include <iosfwd>
#include <string>

#include "skrp/cli/report.hpp"
#include "skrp/cli/run_config.hpp"
#include "skrp/geom/model.hpp"
#include "skrp/solutions/koiso.hpp"

namespace skrp::cli {

/// Exact suite: rati sweep, first-order reduction, third-order equation, Koiso
/// residuals, mek identity on random profiles, f(t) coefficients, and the dual checks.
Report run_symbolic_suite(const RunConfig& config);

/// Involution of the duality, dual Koiso profile, soliton coefficients against alpha/gamma.
Report run_dual_suite(const RunConfig& config);

/// Numerical suite on the Koiso configuration; per-point rows go to `csv` when given.
Report run_geometry_suite(const RunConfig& config, std::ostream* csv = nullptr);

/// Dispatch on config.mode.
Report run_verify(const RunConfig& config, std::ostream* csv = nullptr);

/// The Koiso member selected by (m, b, B, C, kappa, eps). Throws ConfigError for b = 0;
/// solutions::ProfileError for a zero profile.
solutions::KoisoFamily family_of(const RunConfig& config);

/// Geometry configuration for the Koiso member, with kappa measured from the base
/// when config.kappa_from_base and phi shifted by config.perturb_A.
geom::ModelConfig model_config_of(const RunConfig& config);

/// Canonical rendering of phi, A, e, the constraint, Q and the dual Q.
std::string emit_family(const RunConfig& config);

/// Writes tau,log_r,r rows on config.samples nodes; returns false if the node
/// residual exceeds 1e-9 or r is not monotone.
bool write_radius_table(const RunConfig& config, std::ostream& out);

}  // namespace skrp::cli
