#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skrp/solutions/profile.hpp"

namespace skrp::dualmap {

using ratcalc::ExpExpression;
using ratcalc::Rational;
using ratcalc::RationalFunction;
using solutions::TauInterval;

/// Coefficients of alpha Hess(tau) + Ric = gamma g for a pair (g, tau) of real
/// dimension n, all as functions of that pair's own variable.
struct PairData {
    int n = 4;
    ExpExpression alpha;
    ExpExpression gamma;
    ExpExpression Q;
    ExpExpression laplacian;
    TauInterval domain;
    /// Points excluded from numerical sampling (singularities, tau = 0, ...).
    std::vector<Rational> excluded;
};

struct DualPair {
    /// Hatted coefficients as functions of the original variable t.
    PairData in_original;
    /// The same functions re-expressed in the hatted variable 1/t.
    PairData in_hat;
};

/// Image of an interval under t -> 1/t. Throws if the interval contains 0.
TauInterval invert_domain(const TauInterval& d);

/// (g, tau) -> (g/tau^2, 1/tau). Requires n > 3 and a domain not containing 0.
DualPair dualize(const PairData& pair);

PairData pair_from_profile(const solutions::SkrpProfile& profile);

struct SolitonSpec {
    Rational b;  ///< soliton function b/tau
    Rational e;  ///< soliton constant
};

/// alpha = (n-2)/t - b/t^2, gamma = e/t^2 - laplacian/t + ((n-1)/t^2 - b/t^3) Q
std::pair<ExpExpression, ExpExpression> soliton_coefficients(int n, const SolitonSpec& spec, const ExpExpression& Q,
                                                             const ExpExpression& laplacian);

/// Coefficients of Ric + H Hess(tau) + K dtau (x) dtau = [e E + laplacian L + Q P] g
/// for a tau-dependent soliton function f.
struct FTauCoefficients {
    RationalFunction hessian;      ///< f' + (n-2)/t
    RationalFunction dtau_dtau;    ///< f'' + 2 f'/t
    RationalFunction e_slot;       ///< 1/t^2
    RationalFunction laplacian_slot;  ///< -1/t
    RationalFunction Q_slot;       ///< (n-1)/t^2 + f'/t

    ExpExpression metric_coefficient(const Rational& e, const ExpExpression& Q, const ExpExpression& laplacian) const;
};

/// Throws std::invalid_argument unless f_second == d/dt f_prime.
FTauCoefficients f_tau_coefficients(int n, const RationalFunction& f_prime, const RationalFunction& f_second);

/// t -> t - shift applied to an expression (affine invariance of the equation).
ExpExpression shift_variable(const ExpExpression& f, const Rational& shift);

struct SkrpDual {
    RationalFunction t_hat;  ///< 1/(t - c)
    Rational a_hat;          ///< -a
    Rational c_hat;          ///< 0
    ExpExpression Q_hat;     ///< Q/(t-c)^2, in the original variable
    bool defining_equation = false;  ///< a Q_hat / Q == a_hat dt_hat/dt
    bool horizontal_factor = false;  ///< (t_hat - c_hat)(t - c) == 1
    bool vertical_factor = false;    ///< Q_hat/a_hat^2 == Q/(a^2 (t-c)^2)
    bool positive = false;           ///< Q_hat > 0 at the domain midpoint
    /// Dual profile in the variable t_hat, when the re-expression stays exp-rational.
    std::optional<solutions::SkrpProfile> dual_profile;
    std::string note;

    bool pass() const { return defining_equation && horizontal_factor && vertical_factor && positive; }
};

SkrpDual skrp_dualize(const solutions::SkrpProfile& profile, const Rational& a);

}  // namespace skrp::dualmap
