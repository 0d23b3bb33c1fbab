#include "skrp/solutions/profile.hpp"

#include <cmath>

#include "skrp/odesys/soliton.hpp"

namespace skrp::solutions {

namespace {

RationalFunction shifted(const Rational& c) { return RationalFunction(ratcalc::Polynomial::linear_factor(c)); }

}  // namespace

Rational TauInterval::midpoint() const {
    if (lo && hi) return (*lo + *hi) / Rational(2);
    if (lo) return *lo + Rational(1);
    if (hi) return *hi - Rational(1);
    return Rational(0);
}

bool TauInterval::contains(const Rational& t) const { return (!lo || *lo < t) && (!hi || t < *hi); }

std::string TauInterval::to_string() const {
    return "(" + (lo ? lo->to_string() : std::string("-inf")) + ", " + (hi ? hi->to_string() : std::string("inf")) + ")";
}

void validate_profile(const SkrpProfile& profile) {
    odesys::require_dimension(profile.m);
    if (profile.phi.is_zero()) throw ProfileError("trivial (zero) profile");
    const double mid = profile.domain.midpoint().to_double();
    const double phi = profile.phi.evaluate(mid);
    const double Q = profile_Q(profile).evaluate(mid);
    if (!(Q > 0.0)) throw ProfileError("Q = 2(t-c)phi is not positive at the domain midpoint t = " + std::to_string(mid));
    if (!(static_cast<double>(static_cast<int>(profile.eps)) * phi > 0.0)) {
        throw ProfileError("eps does not match sgn(phi) at the domain midpoint");
    }
}

ExpExpression profile_Q(const SkrpProfile& profile) {
    return RationalFunction(2) * shifted(profile.c) * profile.phi;
}

DerivedFunctions qet_derive(const SkrpProfile& profile) {
    const RationalFunction s = shifted(profile.c);
    const RationalFunction m(static_cast<long>(profile.m));
    const ExpExpression& phi = profile.phi;
    const ExpExpression d1 = phi.derivative();
    const ExpExpression d2 = d1.derivative();

    DerivedFunctions out;
    out.psi = phi + s * d1;
    out.Q = RationalFunction(2) * s * phi;
    out.laplacian = RationalFunction(2) * m * phi + RationalFunction(2) * s * d1;
    out.mu = -(m + RationalFunction(1)) * d1 - s * d2;
    out.lambda = (ExpExpression(odesys::to_rational(profile.eps) * profile.kappa) - out.laplacian) /
                 (RationalFunction(2) * s);

    const ExpExpression gap = out.psi - phi;
    if (gap.is_zero()) {
        out.note = "psi == phi identically: the Hessian of tau is a multiple of g, alpha undefined";
        return out;
    }
    auto alpha = ratcalc::divide_exact(out.lambda - out.mu, gap);
    if (!alpha) {
        out.note = "(lambda - mu)/(psi - phi) is not an exp-rational expression";
        return out;
    }
    out.alpha = *alpha;
    out.gamma = *alpha * phi + out.lambda;
    return out;
}

std::pair<ExpExpression, ExpExpression> alpha_gamma(const SkrpProfile& profile) {
    const DerivedFunctions d = qet_derive(profile);
    if (!d.alpha) throw DegenerateProfile(d.note);
    const ExpExpression gamma_via_psi = *d.alpha * d.psi + d.mu;
    if (gamma_via_psi != *d.gamma) {
        throw std::logic_error("gamma routes disagree: " + d.gamma->to_string() + " vs " + gamma_via_psi.to_string());
    }
    return {*d.alpha, *d.gamma};
}

ConstantRecovery recover_constants(const SkrpProfile& profile, const DerivedFunctions& d) {
    ConstantRecovery r;
    r.c_recovered = (d.Q - RationalFunction(2) * shifted(profile.c) * profile.phi).is_zero();
    const ExpExpression lhs = RationalFunction(odesys::to_rational(profile.eps)) * (d.laplacian * profile.phi + d.lambda * d.Q);
    r.kappa_recovered = (lhs - RationalFunction(profile.kappa) * profile.phi).is_zero();
    return r;
}

CheckReport verify_mek_identity(const SkrpProfile& profile) {
    CheckReport report;
    const DerivedFunctions d = qet_derive(profile);
    const ExpExpression gap = d.psi - profile.phi;
    if (gap.is_zero()) {
        report.skipped = true;
        report.pass = false;
        report.detail = "skipped: " + d.note;
        return report;
    }
    if (d.alpha && d.alpha->is_rational()) {
        const auto mek = odesys::build_mek(profile.m, profile.c, profile.kappa, profile.eps, *d.alpha->as_rational());
        const ExpExpression r = mek.residual(profile.phi);
        report.pass = r.is_zero();
        report.detail = "alpha = " + d.alpha->to_string() + "; residual = " + r.to_string();
        return report;
    }
    // (psi - phi) * mek, with alpha (psi - phi) replaced by (lambda - mu).
    const RationalFunction s = shifted(profile.c);
    const RationalFunction m(static_cast<long>(profile.m));
    const ExpExpression d1 = profile.phi.derivative();
    const ExpExpression d2 = d1.derivative();
    const ExpExpression base = s * s * d2 + s * m * d1 - m * profile.phi +
                               ExpExpression(odesys::to_rational(profile.eps) * profile.kappa / Rational(2));
    const ExpExpression r = base * gap - s * s * (d.lambda - d.mu) * d1;
    report.pass = r.is_zero();
    report.detail = "alpha not exp-rational; cleared residual = " + r.to_string();
    return report;
}

ExpExpression residual(const odesys::LinearODE2& ode, const ExpExpression& phi) { return ode.residual(phi); }

}  // namespace skrp::solutions
