#pragma once

#include "skrp/ratcalc/exp_expression.hpp"
#include "skrp/ratcalc/partial_fractions.hpp"
#include "skrp/ratcalc/polynomial.hpp"
#include "skrp/ratcalc/rational.hpp"
#include "skrp/ratcalc/rational_function.hpp"

namespace skrp::ratcalc {

inline RationalFunction rf_normalize(const Polynomial& num, const Polynomial& den) {
    return RationalFunction::normalize(num, den);
}
inline RationalFunction rf_derivative(const RationalFunction& f) { return f.derivative(); }
inline ExpExpression expr_substitute(const ExpExpression& f, const RationalFunction& s) { return f.substitute(s); }

}  // namespace skrp::ratcalc
