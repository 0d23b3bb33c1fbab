#include "skrp/ratcalc/partial_fractions.hpp"

#include <algorithm>

namespace skrp::ratcalc {

RationalFunction PartialFractionForm::reassemble() const {
    RationalFunction sum(polynomial_part);
    for (const auto& term : pole_terms) {
        sum += RationalFunction(term.coefficient) / RationalFunction(Polynomial::linear_factor(term.pole).pow(term.order));
    }
    return sum;
}

Rational PartialFractionForm::coefficient(const Rational& pole, int order) const {
    for (const auto& term : pole_terms) {
        if (term.pole == pole && term.order == order) return term.coefficient;
    }
    return Rational(0);
}

std::string PartialFractionForm::to_string() const {
    std::string out = polynomial_part.is_zero() ? "" : polynomial_part.to_string();
    for (const auto& term : pole_terms) {
        std::string base = term.pole.is_zero() ? "t"
                           : term.pole.sign() > 0 ? "(t - " + term.pole.to_string() + ")"
                                                  : "(t + " + (-term.pole).to_string() + ")";
        if (term.order > 1) base += "^" + std::to_string(term.order);
        const std::string mag = term.coefficient.abs().to_string() + "/" + base;
        if (out.empty()) out = (term.coefficient.sign() < 0 ? "-" : "") + mag;
        else out += (term.coefficient.sign() < 0 ? " - " : " + ") + mag;
    }
    return out.empty() ? "0" : out;
}

void PartialFractionForm::canonicalize() {
    std::erase_if(pole_terms, [](const PoleTerm& t) { return t.coefficient.is_zero(); });
    std::sort(pole_terms.begin(), pole_terms.end(), [](const PoleTerm& a, const PoleTerm& b) {
        if (a.pole != b.pole) return a.pole < b.pole;
        return a.order < b.order;
    });
}

PartialFractionForm rf_partial_fractions(const RationalFunction& f, const std::vector<Rational>& poles) {
    std::vector<Rational> distinct = poles;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    // Multiplicity of each supplied pole in the (monic) denominator.
    Polynomial rest = f.denominator();
    std::vector<std::pair<Rational, int>> multiplicity;
    for (const auto& pole : distinct) {
        const Polynomial factor = Polynomial::linear_factor(pole);
        int k = 0;
        for (;;) {
            auto [q, r] = rest.divmod(factor);
            if (!r.is_zero()) break;
            rest = std::move(q);
            ++k;
        }
        if (k > 0) multiplicity.emplace_back(pole, k);
    }
    if (rest.degree() > 0) {
        throw PartialFractionError("denominator factor " + rest.to_string() + " of " + f.to_string() +
                                   " has no supplied rational root");
    }

    PartialFractionForm form;
    auto [quotient, remainder] = f.numerator().divmod(f.denominator());
    form.polynomial_part = quotient;
    const RationalFunction proper = RationalFunction::normalize(remainder, f.denominator());

    // Coefficient of 1/(t-p)^j is g^{(k-j)}(p)/(k-j)! with g = proper*(t-p)^k.
    for (const auto& [pole, k] : multiplicity) {
        RationalFunction g = proper * RationalFunction(Polynomial::linear_factor(pole).pow(k));
        for (int shift = 0; shift < k; ++shift) {
            const Rational c = g.evaluate(pole) / factorial(shift);
            if (!c.is_zero()) form.pole_terms.push_back({pole, k - shift, c});
            g = g.derivative();
        }
    }
    form.canonicalize();
    return form;
}

}  // namespace skrp::ratcalc
