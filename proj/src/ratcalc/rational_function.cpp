#include "skrp/ratcalc/rational_function.hpp"

#include <stdexcept>

namespace skrp::ratcalc {

namespace {

bool needs_parens(const Polynomial& p) {
    int terms = 0;
    for (const auto& c : p.coeffs()) {
        if (!c.is_zero()) ++terms;
    }
    if (terms > 1) return true;
    // A lone fractional coefficient would otherwise read as a nested quotient.
    return terms == 1 && !p.leading().is_integer();
}

}  // namespace

RationalFunction RationalFunction::normalize(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw std::invalid_argument("rational function with zero denominator");
    if (num.is_zero()) return RationalFunction();
    const Polynomial g = gcd(num, den);
    Polynomial n = num.divmod(g).first;
    Polynomial d = den.divmod(g).first;
    const Rational lead = d.leading();
    n *= lead.inverse();
    d *= lead.inverse();
    return RationalFunction(std::move(n), std::move(d), true);
}

Rational RationalFunction::constant_value() const {
    if (!is_constant()) throw std::logic_error("rational function is not constant: " + to_string());
    return num_.coeff(0);
}

RationalFunction RationalFunction::derivative() const {
    return normalize(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational function");
    return normalize(den_, num_);
}

RationalFunction RationalFunction::pow(int exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    return RationalFunction(num_.pow(exponent), den_.pow(exponent), true);
}

Rational RationalFunction::evaluate(const Rational& t) const {
    const Rational d = den_.evaluate(t);
    if (d.is_zero()) throw std::domain_error("evaluation at a pole t = " + t.to_string());
    return num_.evaluate(t) / d;
}

double RationalFunction::evaluate(double t) const { return num_.evaluate(t) / den_.evaluate(t); }

RationalFunction RationalFunction::compose(const RationalFunction& s) const {
    auto horner = [&s](const Polynomial& p) {
        RationalFunction acc;
        for (int k = p.degree(); k >= 0; --k) acc = acc * s + RationalFunction(p.coeff(k));
        return acc;
    };
    if (is_zero()) return *this;
    return horner(num_) / horner(den_);
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& rhs) {
    if (den_ == rhs.den_) {
        *this = normalize(num_ + rhs.num_, den_);
    } else {
        *this = normalize(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
    }
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& rhs) { return *this += -rhs; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& rhs) {
    *this = normalize(num_ * rhs.num_, den_ * rhs.den_);
    return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& rhs) {
    if (rhs.is_zero()) throw std::domain_error("division by zero rational function");
    *this = normalize(num_ * rhs.den_, den_ * rhs.num_);
    return *this;
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_, true); }

std::string RationalFunction::to_string() const {
    if (is_polynomial()) return num_.to_string();
    std::string n = num_.to_string();
    if (needs_parens(num_)) n = "(" + n + ")";
    std::string d = den_.to_string();
    if (needs_parens(den_)) d = "(" + d + ")";
    return n + "/" + d;
}

bool less_canonical(const RationalFunction& lhs, const RationalFunction& rhs) {
    if (lhs.numerator() != rhs.numerator()) return less_canonical(lhs.numerator(), rhs.numerator());
    return less_canonical(lhs.denominator(), rhs.denominator());
}

}  // namespace skrp::ratcalc
