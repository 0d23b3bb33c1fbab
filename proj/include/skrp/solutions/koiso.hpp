#pragma once

#include <string>

#include "skrp/odesys/soliton.hpp"
#include "skrp/solutions/profile.hpp"

namespace skrp::solutions {

/// sum_{l=first}^{last} b^{m-l} t^l / (m-l)!
ratcalc::Polynomial truncated_exp_sum(int m, const Rational& b, int first, int last);

/// Polynomial solution of the first homogeneous c = 0 soliton equation: l = 0..m.
ratcalc::Polynomial koiso_basis_first(int m, const Rational& b);
/// Polynomial solution of the second homogeneous c = 0 soliton equation: l = 1..m.
ratcalc::Polynomial koiso_basis_second(int m, const Rational& b);
/// t^m exp(b/t), common to both homogeneous equations.
ExpExpression koiso_exp_solution(int m, const Rational& b);

/// The c = 0 soliton pair.
odesys::SolitonSystem koiso_system(int m, const Rational& b, const Rational& kappa, Sign eps, const Rational& e);

/// phi = A + B sum_{l=1}^{m} b^{m-l} t^l/(m-l)! + C t^m exp(b/t), with A and e
/// fixed by exact residual elimination in both equations.
struct KoisoFamily {
    int m = 2;
    Rational b;
    Rational B;
    Rational C;
    Rational kappa;
    Sign eps = Sign::plus;
    Rational A;
    Rational e;
    ExpExpression phi;

    /// A = eps*kappa/(2m) + B b^m/m!, e = b A
    std::string constraint() const;
};

/// Throws ProfileError for b == 0 or a zero profile; odesys::ConsistencyError
/// if elimination leaves a nonconstant A or e.
KoisoFamily koiso_family(int m, const Rational& b, const Rational& B, const Rational& C, const Rational& kappa, Sign eps);

/// Same elimination, but over an arbitrary polynomial part phi_0 + C t^m exp(b/t).
/// Exposed so the as-printed basis can be shown to be inconsistent.
KoisoFamily koiso_family_with_sum(int m, const Rational& b, const ratcalc::Polynomial& sum, const Rational& B,
                                  const Rational& C, const Rational& kappa, Sign eps);

SkrpProfile koiso_profile(const KoisoFamily& family, const TauInterval& domain);

struct DualProfileReport {
    bool pass = false;
    ExpExpression phi_hat;  ///< phi(1/t), in the hatted variable
    ExpExpression Q_hat;    ///< 2 t phi_hat(t)
    std::string detail;
};

/// phi_hat(t) = phi(1/t), and Q_hat = 2 t phi_hat equals t^2 Q(1/t).
DualProfileReport dual_profile_check(const KoisoFamily& family);

}  // namespace skrp::solutions
