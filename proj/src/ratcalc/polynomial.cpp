#include "skrp/ratcalc/polynomial.hpp"

#include <stdexcept>

namespace skrp::ratcalc {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(const Rational& constant) {
    if (!constant.is_zero()) coeffs_.push_back(constant);
}

Polynomial Polynomial::monomial(const Rational& coeff, int power) {
    if (power < 0) throw std::invalid_argument("negative monomial power");
    std::vector<Rational> c(static_cast<std::size_t>(power) + 1);
    c.back() = coeff;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::linear_factor(const Rational& root) { return Polynomial({-root, Rational(1)}); }

Rational Polynomial::coeff(int power) const {
    if (power < 0 || power >= static_cast<int>(coeffs_.size())) return Rational(0);
    return coeffs_[static_cast<std::size_t>(power)];
}

Rational Polynomial::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * Rational(static_cast<long>(k));
    return Polynomial(std::move(d));
}

Rational Polynomial::evaluate(const Rational& t) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double Polynomial::evaluate(double t) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->to_double();
    return acc;
}

Polynomial Polynomial::pow(int exponent) const {
    if (exponent < 0) throw std::invalid_argument("negative polynomial power");
    Polynomial result(Rational(1));
    for (int i = 0; i < exponent; ++i) result *= *this;
    return result;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = coeffs_;
    const int dd = divisor.degree();
    const Rational lead_inv = divisor.leading().inverse();
    if (degree() < dd) return {Polynomial(), *this};
    std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd) + 1);
    for (int k = degree(); k >= dd; --k) {
        const Rational factor = rem[static_cast<std::size_t>(k)] * lead_inv;
        if (factor.is_zero()) continue;
        quot[static_cast<std::size_t>(k - dd)] = factor;
        for (int j = 0; j <= dd; ++j) {
            rem[static_cast<std::size_t>(k - dd + j)] -= factor * divisor.coeffs_[static_cast<std::size_t>(j)];
        }
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
    if (is_zero() || rhs.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> prod(coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    coeffs_ = std::move(prod);
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& rhs) {
    for (auto& c : coeffs_) c *= rhs;
    trim();
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

std::string Polynomial::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        const bool negative = c.sign() < 0;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        const Rational mag = c.abs();
        std::string power;
        if (k == 1) power = "t";
        else if (k > 1) power = "t^" + std::to_string(k);
        if (k == 0) {
            out += mag.to_string();
        } else if (mag == Rational(1)) {
            out += power;
        } else {
            out += mag.to_string() + "*" + power;
        }
    }
    return out;
}

Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

bool less_canonical(const Polynomial& lhs, const Polynomial& rhs) {
    if (lhs.degree() != rhs.degree()) return lhs.degree() < rhs.degree();
    for (int k = lhs.degree(); k >= 0; --k) {
        const auto c = lhs.coeff(k) <=> rhs.coeff(k);
        if (c != 0) return c < 0;
    }
    return false;
}

}  // namespace skrp::ratcalc
