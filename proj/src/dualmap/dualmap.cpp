#include "skrp/dualmap/dualmap.hpp"

#include <stdexcept>

namespace skrp::dualmap {

namespace {

RationalFunction t() { return ratcalc::tau(); }

}  // namespace

TauInterval invert_domain(const TauInterval& d) {
    const bool positive = d.lo && d.lo->sign() >= 0;
    const bool negative = d.hi && d.hi->sign() <= 0;
    if (!positive && !negative) throw std::invalid_argument("domain " + d.to_string() + " contains tau = 0");
    TauInterval out;
    if (positive) {
        out.lo = d.hi ? d.hi->inverse() : Rational(0);
        if (!d.lo->is_zero()) out.hi = d.lo->inverse();
    } else {
        if (!d.hi->is_zero()) out.lo = d.hi->inverse();
        out.hi = d.lo ? d.lo->inverse() : Rational(0);
    }
    return out;
}


DualPair dualize(const PairData& pair) {
    if (pair.n <= 3) throw std::invalid_argument("dualization needs real dimension n > 3");
    const RationalFunction T = t();
    const RationalFunction n(static_cast<long>(pair.n));

    PairData hat;
    hat.n = pair.n;
    hat.alpha = ExpExpression((n - RationalFunction(2)) * T) - T * T * pair.alpha;
    hat.gamma = T * T * pair.gamma - (ExpExpression(1) + T * pair.alpha) * pair.Q + T * pair.laplacian;
    hat.Q = pair.Q / (T * T);
    hat.laplacian = n / T * pair.Q - pair.laplacian;
    hat.domain = pair.domain;
    hat.excluded = pair.excluded;

    const RationalFunction inv = ratcalc::inverse_tau();
    PairData re;
    re.n = pair.n;
    re.alpha = hat.alpha.substitute(inv);
    re.gamma = hat.gamma.substitute(inv);
    re.Q = hat.Q.substitute(inv);
    re.laplacian = hat.laplacian.substitute(inv);
    re.domain = invert_domain(pair.domain);
    for (const auto& x : pair.excluded) {
        if (!x.is_zero()) re.excluded.push_back(x.inverse());
    }
    return {std::move(hat), std::move(re)};
}

PairData pair_from_profile(const solutions::SkrpProfile& profile) {
    const auto d = solutions::qet_derive(profile);
    if (!d.alpha) throw solutions::DegenerateProfile(d.note);
    PairData p;
    p.n = 2 * profile.m;
    p.alpha = *d.alpha;
    p.gamma = *d.gamma;
    p.Q = d.Q;
    p.laplacian = d.laplacian;
    p.domain = profile.domain;
    p.excluded = {Rational(0), profile.c};
    return p;
}

std::pair<ExpExpression, ExpExpression> soliton_coefficients(int n, const SolitonSpec& spec, const ExpExpression& Q,
                                                             const ExpExpression& laplacian) {
    if (n <= 2) throw std::invalid_argument("soliton coefficients need n > 2");
    const RationalFunction T = t();
    const RationalFunction b(spec.b);
    const RationalFunction nn(static_cast<long>(n));
    const ExpExpression alpha((nn - RationalFunction(2)) / T - b / (T * T));
    const ExpExpression gamma = ExpExpression(RationalFunction(spec.e) / (T * T)) - laplacian / T +
                                ((nn - RationalFunction(1)) / (T * T) - b / (T * T * T)) * Q;
    return {alpha, gamma};
}

ExpExpression FTauCoefficients::metric_coefficient(const Rational& e, const ExpExpression& Q,
                                                   const ExpExpression& laplacian) const {
    return ExpExpression(RationalFunction(e) * e_slot) + laplacian_slot * laplacian + Q_slot * Q;
}

FTauCoefficients f_tau_coefficients(int n, const RationalFunction& f_prime, const RationalFunction& f_second) {
    if (f_prime.derivative() != f_second) {
        throw std::invalid_argument("f'' = " + f_second.to_string() + " is not the derivative of f' = " +
                                    f_prime.to_string());
    }
    const RationalFunction T = t();
    const RationalFunction nn(static_cast<long>(n));
    return {f_prime + (nn - RationalFunction(2)) / T,
            f_second + RationalFunction(2) * f_prime / T,
            RationalFunction(1) / (T * T),
            -RationalFunction(1) / T,
            (nn - RationalFunction(1)) / (T * T) + f_prime / T};
}

ExpExpression shift_variable(const ExpExpression& f, const Rational& shift) {
    return f.substitute(RationalFunction(ratcalc::Polynomial::linear_factor(shift)));
}

SkrpDual skrp_dualize(const solutions::SkrpProfile& profile, const Rational& a) {
    if (a.is_zero()) throw std::invalid_argument("bundle constant a must be nonzero");
    if (profile.phi.is_zero()) throw solutions::ProfileError("trivial (zero) profile");
    const RationalFunction s(ratcalc::Polynomial::linear_factor(profile.c));
    const ExpExpression Q = solutions::profile_Q(profile);

    SkrpDual d;
    d.t_hat = s.inverse();
    d.a_hat = -a;
    d.c_hat = Rational(0);
    d.Q_hat = Q / (s * s);

    const RationalFunction dt_hat = d.t_hat.derivative();
    d.defining_equation = (RationalFunction(a) * d.Q_hat - RationalFunction(d.a_hat) * dt_hat * Q).is_zero();
    d.horizontal_factor = (d.t_hat - RationalFunction(d.c_hat)) * s == RationalFunction(1);
    d.vertical_factor =
        (d.Q_hat / RationalFunction(d.a_hat * d.a_hat) - Q / (RationalFunction(a * a) * s * s)).is_zero();
    d.positive = d.Q_hat.evaluate(profile.domain.midpoint().to_double()) > 0.0;

    // t = c + 1/t_hat
    const RationalFunction back = RationalFunction(profile.c) + ratcalc::inverse_tau();
    try {
        const ExpExpression Q_hat_in_hat = d.Q_hat.substitute(back);
        solutions::SkrpProfile dual;
        dual.m = profile.m;
        dual.c = d.c_hat;
        dual.kappa = profile.kappa;
        dual.eps = profile.eps;
        dual.phi = Q_hat_in_hat / (RationalFunction(2) * ratcalc::tau());
        // t_hat = 1/(t - c) maps the domain like the plain inversion after the shift.
        TauInterval shifted_domain;
        if (profile.domain.lo) shifted_domain.lo = *profile.domain.lo - profile.c;
        if (profile.domain.hi) shifted_domain.hi = *profile.domain.hi - profile.c;
        dual.domain = invert_domain(shifted_domain);
        d.dual_profile = std::move(dual);
    } catch (const std::invalid_argument& ex) {
        d.note = ex.what();
    }
    return d;
}

}  // namespace skrp::dualmap
