#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "skrp/ratcalc/rational_function.hpp"

namespace skrp::ratcalc {

/// coefficient / (t - pole)^order
struct PoleTerm {
    Rational pole;
    int order = 1;
    Rational coefficient;
    friend bool operator==(const PoleTerm&, const PoleTerm&) = default;
};

struct PartialFractionForm {
    Polynomial polynomial_part;
    /// Sorted by pole, then order; zero coefficients omitted.
    std::vector<PoleTerm> pole_terms;

    /// Drops zero coefficients and restores the sort order.
    void canonicalize();
    RationalFunction reassemble() const;
    /// Coefficient of 1/(t - pole)^order, zero if absent.
    Rational coefficient(const Rational& pole, int order) const;
    std::string to_string() const;
    friend bool operator==(const PartialFractionForm&, const PartialFractionForm&) = default;
};

class PartialFractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Decomposition over caller-supplied rational poles. Throws PartialFractionError
/// when the denominator has a factor with no supplied root.
PartialFractionForm rf_partial_fractions(const RationalFunction& f, const std::vector<Rational>& poles);

}  // namespace skrp::ratcalc
