#pragma once

#include <string>

#include "skrp/ratcalc.hpp"

namespace skrp::odesys {

using ratcalc::ExpExpression;
using ratcalc::Polynomial;
using ratcalc::Rational;
using ratcalc::RationalFunction;

/// sgn(phi); constant on the regular set.
enum class Sign : int { minus = -1, plus = 1 };

inline Rational to_rational(Sign s) { return Rational(static_cast<long>(s)); }
Sign parse_sign(const std::string& text);
std::string to_string(Sign s);

/// phi' + p phi = q
struct LinearODE1 {
    RationalFunction p;
    RationalFunction q;
    friend bool operator==(const LinearODE1&, const LinearODE1&) = default;
};

/// B phi' + C phi = D, kept un-normalized so printed equations compare literally.
struct FirstOrderCleared {
    RationalFunction B;
    RationalFunction C;
    RationalFunction D;
    LinearODE1 normalized() const;
    friend bool operator==(const FirstOrderCleared&, const FirstOrderCleared&) = default;
};

/// A phi'' + B phi' + C phi = D
struct LinearODE2 {
    RationalFunction A;
    RationalFunction B;
    RationalFunction C;
    RationalFunction D;

    LinearODE2 scaled(const RationalFunction& factor) const;
    /// A phi'' + B phi' + C phi - D
    ExpExpression residual(const ExpExpression& phi) const;
    std::string to_string() const;
    friend bool operator==(const LinearODE2&, const LinearODE2&) = default;
};

LinearODE2 operator+(const LinearODE2& lhs, const LinearODE2& rhs);

/// P3 phi''' = P2 phi'' + P1 phi' + P0 phi
struct LinearODE3 {
    RationalFunction P3;
    RationalFunction P2;
    RationalFunction P1;
    RationalFunction P0;

    LinearODE3 scaled(const RationalFunction& factor) const;
    std::string to_string() const;
    friend bool operator==(const LinearODE3&, const LinearODE3&) = default;
};

class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace skrp::odesys
