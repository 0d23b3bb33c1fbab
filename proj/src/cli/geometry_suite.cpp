#include <ostream>

#include "skrp/cli/suites.hpp"
#include "skrp/geom/checks.hpp"
#include "skrp/geom/radius.hpp"

namespace skrp::cli {

namespace {

using ratcalc::ExpExpression;
using ratcalc::RationalFunction;

// Profile and domain problems are configuration errors in the numerical modes.
template <typename F>
auto as_config_error(F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(ex.what());
    }
}

}  // namespace

geom::ModelConfig model_config_of(const RunConfig& config) {
    validate(config);
    if (!config.c.is_zero()) {
        throw ConfigError("geometry runs the c = 0 Koiso configuration; got c = " + config.c.to_string());
    }
    return as_config_error([&] {
        RunConfig cfg = config;
        const double s0 = config.s0.to_double();
        if (cfg.kappa_from_base) {
            const auto k = geom::measure_kappa(geom::BaseMetric{cfg.m, s0, geom::BaseKind::fubini_study});
            cfg.kappa = rational_from_double(k.kappa);
        }
        const auto fam = family_of(cfg);
        geom::ModelConfig mc;
        mc.profile = solutions::koiso_profile(fam, {cfg.tau_min, cfg.tau_max});
        if (!cfg.perturb_A.is_zero()) mc.profile.phi += ExpExpression(cfg.perturb_A);
        mc.a = cfg.a;
        mc.s0 = s0;
        mc.base = geom::BaseKind::fubini_study;
        mc.soliton = dualmap::SolitonSpec{fam.b, fam.e};
        mc.tau_min = cfg.tau_min.to_double();
        mc.tau_max = cfg.tau_max.to_double();
        mc.samples = cfg.samples;
        mc.seed = cfg.seed;
        if (cfg.tol) mc.tol.symbolic = *cfg.tol;
        geom::validate_config(mc);
        return mc;
    });
}

Report run_geometry_suite(const RunConfig& config, std::ostream* csv) {
    const geom::ModelConfig mc = model_config_of(config);
    Report report;
    report.mode = "geometry";
    report.config = config.echo();
    report.config["kappa_used"] = mc.profile.kappa.to_string();

    const nlohmann::json params = {{"m", mc.m()},
                                   {"kappa", mc.profile.kappa.to_string()},
                                   {"samples", mc.samples},
                                   {"seed", mc.seed},
                                   {"tau_min", mc.tau_min},
                                   {"tau_max", mc.tau_max}};
    geom::GeometrySuite suite;
    try {
        suite = geom::run_geometry_suite(mc, geom::Execution::parallel);
    } catch (const geom::ConfigurationError& ex) {
        throw ConfigError(ex.what());
    } catch (const std::exception& ex) {
        report.checks.push_back(exact_check("model_construction", false, ex.what(), params));
        return report;
    }
    for (const auto& rec : suite.checks) {
        CheckEntry entry = numeric_check(rec.name, rec.residual, rec.tolerance, rec.bound == geom::Bound::lower,
                                         rec.detail, params);
        entry.pass = rec.pass;
        report.checks.push_back(std::move(entry));
    }
    if (config.A) {
        const auto fam = family_of(config);
        report.checks.push_back(exact_check("koiso_A_matches_constraint", *config.A == fam.A,
                                            "given A = " + config.A->to_string() + ", derived A = " + fam.A.to_string(),
                                            params));
    }
    if (csv) geom::write_csv(*csv, suite.points);
    return report;
}

Report run_verify(const RunConfig& config, std::ostream* csv) {
    switch (config.mode) {
        case Mode::symbolic: return run_symbolic_suite(config);
        case Mode::dual: return run_dual_suite(config);
        case Mode::geometry: return run_geometry_suite(config, csv);
        case Mode::all: break;
    }
    Report report = run_symbolic_suite(config);
    report.append(run_geometry_suite(config, csv));
    report.mode = "all";
    return report;
}

std::string emit_family(const RunConfig& config) {
    const auto fam = family_of(config);
    const RationalFunction t = RationalFunction::variable();
    const ExpExpression Q = ExpExpression(RationalFunction(2) * t) * fam.phi;
    const auto dual = solutions::dual_profile_check(fam);
    std::string out = "phi = " + fam.phi.to_string() + "; A = " + fam.A.to_string() + "; e = " + fam.e.to_string() + "\n";
    out += "constraint: " + fam.constraint() + "\n";
    out += "Q = " + Q.to_string() + "\n";
    out += "phi_hat = " + dual.phi_hat.to_string() + "\n";
    out += "Q_hat = " + dual.Q_hat.to_string() + "\n";
    return out;
}

bool write_radius_table(const RunConfig& config, std::ostream& out) {
    const geom::ModelConfig mc = model_config_of(config);
    const auto profile = as_config_error([&] { return geom::radius_profile(mc, std::max(config.samples, 2)); });
    out << "tau,log_r,r\n";
    out.precision(17);
    for (double t : profile.nodes()) out << t << ',' << profile.log_r(t) << ',' << profile.r(t) << '\n';
    return profile.node_residual() <= 1e-9 && profile.strictly_monotone();
}

}  // namespace skrp::cli
