#include "skrp/solutions/koiso.hpp"

namespace skrp::solutions {

using ratcalc::Polynomial;

Polynomial truncated_exp_sum(int m, const Rational& b, int first, int last) {
    Polynomial sum;
    for (int l = first; l <= last; ++l) sum += Polynomial::monomial(b.pow(m - l) / ratcalc::factorial(m - l), l);
    return sum;
}

Polynomial koiso_basis_first(int m, const Rational& b) { return truncated_exp_sum(m, b, 0, m); }
Polynomial koiso_basis_second(int m, const Rational& b) { return truncated_exp_sum(m, b, 1, m); }

ExpExpression koiso_exp_solution(int m, const Rational& b) {
    return ExpExpression::exp_term(RationalFunction(Polynomial::monomial(Rational(1), m)),
                                   RationalFunction(b) * ratcalc::inverse_tau());
}

odesys::SolitonSystem koiso_system(int m, const Rational& b, const Rational& kappa, Sign eps, const Rational& e) {
    return odesys::build_soliton_system({m, b, Rational(0), kappa, e, eps});
}

std::string KoisoFamily::constraint() const {
    return "A = eps*kappa/(2m) + B*b^m/m! = " + A.to_string() + "; e = b*A = " + e.to_string();
}

KoisoFamily koiso_family_with_sum(int m, const Rational& b, const Polynomial& sum, const Rational& B,
                                  const Rational& C, const Rational& kappa, Sign eps) {
    odesys::require_dimension(m);
    if (b.is_zero()) throw ProfileError("soliton constant b must be nonzero");
    KoisoFamily f{m, b, B, C, kappa, eps, Rational(0), Rational(0), ExpExpression()};

    const ExpExpression partial = ExpExpression(RationalFunction(sum * B)) +
                                  RationalFunction(C) * koiso_exp_solution(m, b);
    // Residuals are affine in (A, e): L1(partial) + A*L1(1) and L2(partial) + A*L2(1) - e t.
    const auto sys = koiso_system(m, b, kappa, eps, Rational(0));
    const ExpExpression r1 = sys.sol1.residual(partial);
    const ExpExpression r1_unit = sys.sol1.residual(ExpExpression(1)) - sys.sol1.residual(ExpExpression());
    const auto r1_rational = r1.as_rational();
    const auto u1 = r1_unit.as_rational();
    if (!r1_rational || !u1) throw odesys::ConsistencyError("first-equation residual keeps an exponential term");
    const RationalFunction a_rf = -*r1_rational / *u1;
    if (!a_rf.is_constant()) {
        throw odesys::ConsistencyError("no constant A solves the first equation: A would be " + a_rf.to_string());
    }
    f.A = a_rf.constant_value();
    f.phi = ExpExpression(f.A) + partial;

    const auto r2 = sys.sol3.residual(f.phi).as_rational();
    if (!r2) throw odesys::ConsistencyError("second-equation residual keeps an exponential term");
    const RationalFunction e_rf = *r2 / ratcalc::tau();
    if (!e_rf.is_constant()) {
        throw odesys::ConsistencyError("no constant e solves the second equation: e would be " + e_rf.to_string());
    }
    f.e = e_rf.constant_value();
    if (f.phi.is_zero()) throw ProfileError("trivial (zero) profile");
    return f;
}

KoisoFamily koiso_family(int m, const Rational& b, const Rational& B, const Rational& C, const Rational& kappa,
                         Sign eps) {
    odesys::require_dimension(m);
    if (b.is_zero()) throw ProfileError("soliton constant b must be nonzero");
    return koiso_family_with_sum(m, b, koiso_basis_second(m, b), B, C, kappa, eps);
}

SkrpProfile koiso_profile(const KoisoFamily& family, const TauInterval& domain) {
    return {family.m, Rational(0), family.kappa, family.eps, family.phi, domain};
}

DualProfileReport dual_profile_check(const KoisoFamily& family) {
    DualProfileReport r;
    const RationalFunction t = ratcalc::tau();
    const RationalFunction inv = ratcalc::inverse_tau();
    r.phi_hat = family.phi.substitute(inv);
    r.Q_hat = RationalFunction(2) * t * r.phi_hat;
    const ExpExpression Q = RationalFunction(2) * t * family.phi;
    const ExpExpression Q_hat_from_Q = t * t * Q.substitute(inv);
    const bool involution = r.phi_hat.substitute(inv) == family.phi;
    r.pass = (r.Q_hat == Q_hat_from_Q) && involution;
    r.detail = "phi_hat = " + r.phi_hat.to_string() + "; Q_hat = " + r.Q_hat.to_string();
    return r;
}

}  // namespace skrp::solutions
