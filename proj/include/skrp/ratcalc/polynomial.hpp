#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "skrp/ratcalc/rational.hpp"

namespace skrp::ratcalc {

/// Dense univariate polynomial in t over Rational. coeffs()[k] multiplies t^k;
/// no trailing zeros, so the zero polynomial has an empty coefficient list.
class Polynomial {
public:
    static constexpr int kZeroDegree = std::numeric_limits<int>::min();

    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
    Polynomial(long constant) : Polynomial(Rational(constant)) {}  // NOLINT(google-explicit-constructor)

    static Polynomial variable() { return monomial(Rational(1), 1); }
    static Polynomial monomial(const Rational& coeff, int power);
    /// (t - root)
    static Polynomial linear_factor(const Rational& root);

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    int degree() const { return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    Rational coeff(int power) const;
    Rational leading() const;
    Polynomial monic() const;

    Polynomial derivative() const;
    Rational evaluate(const Rational& t) const;
    double evaluate(double t) const;
    Polynomial pow(int exponent) const;

    /// Euclidean division: {quotient, remainder} with deg(remainder) < deg(divisor).
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    Polynomial& operator*=(const Rational& rhs);

    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
    friend Polynomial operator*(Polynomial lhs, const Polynomial& rhs) { return lhs *= rhs; }
    friend Polynomial operator*(Polynomial lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Polynomial operator*(const Rational& lhs, Polynomial rhs) { return rhs *= lhs; }
    Polynomial operator-() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    /// Canonical rendering in the variable t, e.g. "2*t^2 - 1".
    std::string to_string() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);

/// Lexicographic total order on coefficient lists (degree first), for canonical sorting.
bool less_canonical(const Polynomial& lhs, const Polynomial& rhs);

}  // namespace skrp::ratcalc
