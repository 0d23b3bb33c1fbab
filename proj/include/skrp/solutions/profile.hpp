#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "skrp/odesys/linear_ode.hpp"

namespace skrp::solutions {

using odesys::Sign;
using ratcalc::ExpExpression;
using ratcalc::Rational;
using ratcalc::RationalFunction;

/// Open interval of t values; a missing endpoint is infinite.
struct TauInterval {
    std::optional<Rational> lo;
    std::optional<Rational> hi;

    Rational midpoint() const;
    bool contains(const Rational& t) const;
    std::string to_string() const;
};

/// Symbolic data of a special Kaehler-Ricci potential along t: complex
/// dimension m, constant c, base Einstein constant kappa, eps = sgn(phi).
struct SkrpProfile {
    int m = 2;
    Rational c;
    Rational kappa;
    Sign eps = Sign::plus;
    ExpExpression phi;
    TauInterval domain;
};

class ProfileError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Checks m >= 2, phi != 0, and at the domain midpoint Q > 0 and eps*phi > 0.
void validate_profile(const SkrpProfile& profile);

/// Q = 2(t-c) phi
ExpExpression profile_Q(const SkrpProfile& profile);

struct DerivedFunctions {
    ExpExpression psi;        ///< phi + (t-c) phi'
    ExpExpression Q;          ///< 2(t-c) phi
    ExpExpression laplacian;  ///< 2m phi + 2(t-c) phi'
    ExpExpression mu;         ///< -(m+1) phi' - (t-c) phi''
    ExpExpression lambda;     ///< (eps kappa - laplacian) / (2(t-c))
    std::optional<ExpExpression> alpha;
    std::optional<ExpExpression> gamma;
    /// Why alpha/gamma are absent, if they are.
    std::string note;
};

class DegenerateProfile : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

DerivedFunctions qet_derive(const SkrpProfile& profile);

/// alpha = (lambda - mu)/(psi - phi), gamma = alpha phi + lambda; both gamma
/// routes are asserted equal. Throws DegenerateProfile when psi == phi, or when
/// the quotient leaves the ExpExpression class.
std::pair<ExpExpression, ExpExpression> alpha_gamma(const SkrpProfile& profile);

/// Exact c- and kappa-recovery identities, cross-multiplied to avoid dividing by phi:
/// Q == 2(t-c) phi and eps (laplacian phi + lambda Q) == kappa phi.
struct ConstantRecovery {
    bool c_recovered = false;
    bool kappa_recovered = false;
};
ConstantRecovery recover_constants(const SkrpProfile& profile, const DerivedFunctions& derived);

struct CheckReport {
    bool pass = false;
    bool skipped = false;
    std::string detail;
};

/// Residual of phi in mek built from alpha of alpha_gamma is exactly zero.
/// Non-representable alpha falls back to the equation multiplied through by (psi - phi).
CheckReport verify_mek_identity(const SkrpProfile& profile);

/// A phi'' + B phi' + C phi - D
ExpExpression residual(const odesys::LinearODE2& ode, const ExpExpression& phi);

}  // namespace skrp::solutions
