#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skrp/ratcalc/rational_function.hpp"

namespace skrp::ratcalc {

/// coefficient * exp(exponent)
struct ExpTerm {
    RationalFunction coefficient;
    RationalFunction exponent;
    friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

/// Exponents must have a polynomial part with zero constant term, e.g. b/t or b*t.
/// Throws std::invalid_argument otherwise.
void require_admissible_exponent(const RationalFunction& exponent);
bool is_admissible_exponent(const RationalFunction& exponent);

/// R0(t) + sum_i R_i(t) exp(E_i(t)).
///
/// Canonical form: exponents pairwise distinct, nonzero and admissible; no zero
/// coefficients; terms sorted by exponent. Two exponents that differ by a
/// nonconstant rational function give algebraically independent exponentials,
/// so the canonical form is zero iff it is structurally empty.
class ExpExpression {
public:
    ExpExpression() = default;
    ExpExpression(const RationalFunction& rational) : rational_(rational) {}  // NOLINT(google-explicit-constructor)
    ExpExpression(const Polynomial& p) : rational_(p) {}  // NOLINT(google-explicit-constructor)
    ExpExpression(const Rational& c) : rational_(c) {}  // NOLINT(google-explicit-constructor)
    ExpExpression(long c) : rational_(c) {}  // NOLINT(google-explicit-constructor)
    ExpExpression(const RationalFunction& rational, std::vector<ExpTerm> terms);

    static ExpExpression exp_term(const RationalFunction& coefficient, const RationalFunction& exponent);

    const RationalFunction& rational_part() const { return rational_; }
    const std::vector<ExpTerm>& terms() const { return terms_; }

    bool is_zero() const { return rational_.is_zero() && terms_.empty(); }
    bool is_rational() const { return terms_.empty(); }
    std::optional<RationalFunction> as_rational() const;

    ExpExpression derivative() const;
    /// Composition this(s(t)). Throws std::invalid_argument if an exponent
    /// becomes inadmissible (e.g. b*t under t -> t - c).
    ExpExpression substitute(const RationalFunction& s) const;
    double evaluate(double t) const;

    ExpExpression& operator+=(const ExpExpression& rhs);
    ExpExpression& operator-=(const ExpExpression& rhs);
    ExpExpression& operator*=(const ExpExpression& rhs);
    ExpExpression& operator*=(const RationalFunction& rhs);

    friend ExpExpression operator+(ExpExpression lhs, const ExpExpression& rhs) { return lhs += rhs; }
    friend ExpExpression operator-(ExpExpression lhs, const ExpExpression& rhs) { return lhs -= rhs; }
    friend ExpExpression operator*(ExpExpression lhs, const ExpExpression& rhs) { return lhs *= rhs; }
    friend ExpExpression operator*(ExpExpression lhs, const RationalFunction& rhs) { return lhs *= rhs; }
    friend ExpExpression operator*(const RationalFunction& lhs, ExpExpression rhs) { return rhs *= lhs; }
    friend ExpExpression operator/(ExpExpression lhs, const RationalFunction& rhs) { return lhs *= rhs.inverse(); }
    ExpExpression operator-() const;

    friend bool operator==(const ExpExpression&, const ExpExpression&) = default;

    /// e.g. "1 + t^2*exp(1/t)"
    std::string to_string() const;

private:
    void canonicalize();
    RationalFunction rational_;
    std::vector<ExpTerm> terms_;
};

/// Exact-zero test on the canonical form.
inline bool expr_is_zero(const ExpExpression& f) { return f.is_zero(); }

/// q with num == q * den, if such an ExpExpression exists and is found by the
/// two structural routes (monomial divisor, or a rational quotient common to all terms).
std::optional<ExpExpression> divide_exact(const ExpExpression& num, const ExpExpression& den);

}  // namespace skrp::ratcalc
