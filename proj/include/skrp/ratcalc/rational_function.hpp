#pragma once

#include <string>

#include "skrp/ratcalc/polynomial.hpp"

namespace skrp::ratcalc {

/// Reduced quotient of polynomials in t. The denominator is monic and coprime
/// to the numerator, so structural equality is mathematical equality.
class RationalFunction {
public:
    RationalFunction() : den_(Rational(1)) {}
    RationalFunction(const Polynomial& poly) : num_(poly), den_(Rational(1)) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(const Rational& constant) : RationalFunction(Polynomial(constant)) {}  // NOLINT
    RationalFunction(long constant) : RationalFunction(Polynomial(constant)) {}  // NOLINT

    /// Reduces num/den to canonical form. Throws std::invalid_argument on a zero denominator.
    static RationalFunction normalize(const Polynomial& num, const Polynomial& den);
    static RationalFunction variable() { return RationalFunction(Polynomial::variable()); }

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return is_polynomial() && num_.is_constant(); }
    /// Value of a constant function; throws std::logic_error otherwise.
    Rational constant_value() const;

    RationalFunction derivative() const;
    RationalFunction inverse() const;
    RationalFunction pow(int exponent) const;
    /// Exact value; throws std::domain_error at a pole.
    Rational evaluate(const Rational& t) const;
    double evaluate(double t) const;
    /// Composition this(s(t)).
    RationalFunction compose(const RationalFunction& s) const;

    /// Polynomial part of the Euclidean split num = q*den + r.
    Polynomial polynomial_part() const { return num_.divmod(den_).first; }

    RationalFunction& operator+=(const RationalFunction& rhs);
    RationalFunction& operator-=(const RationalFunction& rhs);
    RationalFunction& operator*=(const RationalFunction& rhs);
    RationalFunction& operator/=(const RationalFunction& rhs);

    friend RationalFunction operator+(RationalFunction lhs, const RationalFunction& rhs) { return lhs += rhs; }
    friend RationalFunction operator-(RationalFunction lhs, const RationalFunction& rhs) { return lhs -= rhs; }
    friend RationalFunction operator*(RationalFunction lhs, const RationalFunction& rhs) { return lhs *= rhs; }
    friend RationalFunction operator/(RationalFunction lhs, const RationalFunction& rhs) { return lhs /= rhs; }
    RationalFunction operator-() const;

    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

    /// e.g. "(2*t^2 - 1)/(t^2 - 2*t)"
    std::string to_string() const;

private:
    RationalFunction(Polynomial num, Polynomial den, bool /*already canonical*/)
        : num_(std::move(num)), den_(std::move(den)) {}
    Polynomial num_;
    Polynomial den_;
};

bool less_canonical(const RationalFunction& lhs, const RationalFunction& rhs);

/// t, and 1/t: the two substitutions the duality uses.
inline RationalFunction tau() { return RationalFunction::variable(); }
inline RationalFunction inverse_tau() { return RationalFunction::variable().inverse(); }

}  // namespace skrp::ratcalc
