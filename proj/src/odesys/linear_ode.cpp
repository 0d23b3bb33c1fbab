#include "skrp/odesys/linear_ode.hpp"

#include <stdexcept>

namespace skrp::odesys {

Sign parse_sign(const std::string& text) {
    if (text == "+1" || text == "1" || text == "+") return Sign::plus;
    if (text == "-1" || text == "-") return Sign::minus;
    throw std::invalid_argument("sign must be +1 or -1, got '" + text + "'");
}

std::string to_string(Sign s) { return s == Sign::plus ? "+1" : "-1"; }

LinearODE1 FirstOrderCleared::normalized() const {
    if (B.is_zero()) throw std::domain_error("first-order equation with vanishing phi' coefficient");
    return {C / B, D / B};
}

LinearODE2 LinearODE2::scaled(const RationalFunction& factor) const {
    return {A * factor, B * factor, C * factor, D * factor};
}

ExpExpression LinearODE2::residual(const ExpExpression& phi) const {
    const ExpExpression d1 = phi.derivative();
    const ExpExpression d2 = d1.derivative();
    return A * d2 + B * d1 + C * phi - ExpExpression(D);
}

std::string LinearODE2::to_string() const {
    return "(" + A.to_string() + ")*phi'' + (" + B.to_string() + ")*phi' + (" + C.to_string() +
           ")*phi = " + D.to_string();
}

LinearODE2 operator+(const LinearODE2& lhs, const LinearODE2& rhs) {
    return {lhs.A + rhs.A, lhs.B + rhs.B, lhs.C + rhs.C, lhs.D + rhs.D};
}

LinearODE3 LinearODE3::scaled(const RationalFunction& factor) const {
    return {P3 * factor, P2 * factor, P1 * factor, P0 * factor};
}

std::string LinearODE3::to_string() const {
    return "(" + P3.to_string() + ")*phi''' = (" + P2.to_string() + ")*phi'' + (" + P1.to_string() +
           ")*phi' + (" + P0.to_string() + ")*phi";
}

}  // namespace skrp::odesys
