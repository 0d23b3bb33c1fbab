#include "skrp/ratcalc/exp_expression.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skrp::ratcalc {

bool is_admissible_exponent(const RationalFunction& exponent) {
    return exponent.polynomial_part().coeff(0).is_zero();
}

void require_admissible_exponent(const RationalFunction& exponent) {
    if (!is_admissible_exponent(exponent)) {
        throw std::invalid_argument("exponent " + exponent.to_string() +
                                    " has a nonzero constant term; exp of a constant is not exact");
    }
}

ExpExpression::ExpExpression(const RationalFunction& rational, std::vector<ExpTerm> terms)
    : rational_(rational), terms_(std::move(terms)) {
    canonicalize();
}

ExpExpression ExpExpression::exp_term(const RationalFunction& coefficient, const RationalFunction& exponent) {
    return ExpExpression(RationalFunction(), {ExpTerm{coefficient, exponent}});
}

std::optional<RationalFunction> ExpExpression::as_rational() const {
    if (!terms_.empty()) return std::nullopt;
    return rational_;
}

void ExpExpression::canonicalize() {
    std::vector<ExpTerm> merged;
    for (auto& term : terms_) {
        require_admissible_exponent(term.exponent);
        if (term.exponent.is_zero()) {
            rational_ += term.coefficient;
            continue;
        }
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const ExpTerm& m) { return m.exponent == term.exponent; });
        if (it == merged.end()) {
            merged.push_back(std::move(term));
        } else {
            it->coefficient += term.coefficient;
        }
    }
    std::erase_if(merged, [](const ExpTerm& t) { return t.coefficient.is_zero(); });
    std::sort(merged.begin(), merged.end(),
              [](const ExpTerm& a, const ExpTerm& b) { return less_canonical(a.exponent, b.exponent); });
    terms_ = std::move(merged);
}

ExpExpression ExpExpression::derivative() const {
    std::vector<ExpTerm> d;
    d.reserve(terms_.size());
    for (const auto& term : terms_) {
        d.push_back({term.coefficient.derivative() + term.coefficient * term.exponent.derivative(), term.exponent});
    }
    return ExpExpression(rational_.derivative(), std::move(d));
}

ExpExpression ExpExpression::substitute(const RationalFunction& s) const {
    if (s.is_constant()) throw std::invalid_argument("substitution by a constant");
    std::vector<ExpTerm> out;
    out.reserve(terms_.size());
    for (const auto& term : terms_) {
        RationalFunction exponent = term.exponent.compose(s);
        if (!is_admissible_exponent(exponent)) {
            throw std::invalid_argument("substituting t -> " + s.to_string() + " turns exponent " +
                                        term.exponent.to_string() + " into " + exponent.to_string() +
                                        ", which has a nonzero constant term");
        }
        out.push_back({term.coefficient.compose(s), std::move(exponent)});
    }
    return ExpExpression(rational_.compose(s), std::move(out));
}

double ExpExpression::evaluate(double t) const {
    double acc = rational_.is_zero() ? 0.0 : rational_.evaluate(t);
    for (const auto& term : terms_) acc += term.coefficient.evaluate(t) * std::exp(term.exponent.evaluate(t));
    return acc;
}

ExpExpression& ExpExpression::operator+=(const ExpExpression& rhs) {
    rational_ += rhs.rational_;
    terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
    canonicalize();
    return *this;
}

ExpExpression& ExpExpression::operator-=(const ExpExpression& rhs) { return *this += -rhs; }

ExpExpression& ExpExpression::operator*=(const ExpExpression& rhs) {
    std::vector<ExpTerm> prod;
    for (const auto& a : terms_) {
        if (!rhs.rational_.is_zero()) prod.push_back({a.coefficient * rhs.rational_, a.exponent});
        for (const auto& b : rhs.terms_) prod.push_back({a.coefficient * b.coefficient, a.exponent + b.exponent});
    }
    if (!rational_.is_zero()) {
        for (const auto& b : rhs.terms_) prod.push_back({rational_ * b.coefficient, b.exponent});
    }
    rational_ *= rhs.rational_;
    terms_ = std::move(prod);
    canonicalize();
    return *this;
}

ExpExpression& ExpExpression::operator*=(const RationalFunction& rhs) {
    rational_ *= rhs;
    for (auto& term : terms_) term.coefficient *= rhs;
    canonicalize();
    return *this;
}

ExpExpression ExpExpression::operator-() const {
    ExpExpression out = *this;
    out.rational_ = -out.rational_;
    for (auto& term : out.terms_) term.coefficient = -term.coefficient;
    return out;
}

std::string ExpExpression::to_string() const {
    std::vector<std::string> parts;
    if (!rational_.is_zero() || terms_.empty()) parts.push_back(rational_.to_string());
    for (const auto& term : terms_) {
        const std::string e = "exp(" + term.exponent.to_string() + ")";
        const RationalFunction& k = term.coefficient;
        if (k == RationalFunction(1)) {
            parts.push_back(e);
        } else if (k == RationalFunction(-1)) {
            parts.push_back("-" + e);
        } else {
            std::string ks = k.to_string();
            const bool single_term = k.is_polynomial() &&
                std::count_if(k.numerator().coeffs().begin(), k.numerator().coeffs().end(),
                              [](const Rational& c) { return !c.is_zero(); }) == 1;
            if (!single_term) ks = "(" + ks + ")";
            parts.push_back(ks + "*" + e);
        }
    }
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (parts[i].front() == '-') out += " - " + parts[i].substr(1);
        else out += " + " + parts[i];
    }
    return out;
}

std::optional<ExpExpression> divide_exact(const ExpExpression& num, const ExpExpression& den) {
    if (den.is_zero()) throw std::domain_error("exact division by zero expression");
    if (num.is_zero()) return ExpExpression();
    const bool den_monomial = den.terms().empty() || (den.rational_part().is_zero() && den.terms().size() == 1);
    if (den_monomial) {
        if (den.terms().empty()) return num / den.rational_part();
        const ExpTerm& t = den.terms().front();
        return num * ExpExpression::exp_term(t.coefficient.inverse(), -t.exponent);
    }
    // Rational quotient: every term of num is the matching term of den times one r.
    RationalFunction ratio;
    if (!den.rational_part().is_zero()) {
        ratio = num.rational_part() / den.rational_part();
    } else {
        const ExpTerm& pivot = den.terms().front();
        auto it = std::find_if(num.terms().begin(), num.terms().end(),
                               [&](const ExpTerm& t) { return t.exponent == pivot.exponent; });
        if (it == num.terms().end()) return std::nullopt;
        ratio = it->coefficient / pivot.coefficient;
    }
    if (ratio * ExpExpression(den) == num) return ExpExpression(ratio);
    return std::nullopt;
}

}  // namespace skrp::ratcalc
