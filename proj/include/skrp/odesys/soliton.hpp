#pragma once

#include <optional>
#include <string>

#include "skrp/odesys/linear_ode.hpp"

namespace skrp::odesys {

/// Parameters of the soliton ODE pair: complex dimension m, soliton function
/// b/t, s.k.r.p. constant c, base Einstein constant kappa, soliton constant e.
struct SolitonParams {
    int m = 2;
    Rational b;
    Rational c;
    Rational kappa;
    Rational e;
    Sign eps = Sign::plus;

    std::string to_string() const;
};

void require_dimension(int m);

/// (t-c)^2 phi'' + (t-c)[m - (t-c) alpha] phi' - m phi = -eps*kappa/2
LinearODE2 build_mek(int m, const Rational& c, const Rational& kappa, Sign eps, const RationalFunction& alpha);

/// Differentiates mek once and divides by (t - c). Throws ConsistencyError when
/// mek was not built from (alpha, c), or when the result is not homogeneous.
LinearODE3 derive_tcp(const LinearODE2& mek, const RationalFunction& alpha, const Rational& c);

/// (t-c) phi''' = [(t-c) alpha - m - 2] phi'' + [(t-c) alpha' + 2 alpha] phi'
LinearODE3 tcp_printed(int m, const Rational& c, const RationalFunction& alpha);

/// alpha = (2(m-1) t - b)/t^2
RationalFunction soliton_alpha(int m, const Rational& b);

/// t^3 (t-c) phi''' = [(m-4)t^3 - (2(m-1)c + b)t^2 + bct] phi'' + [2(m-1)t(t+c) - 2bc] phi'
LinearODE3 soliton_tcp_printed(int m, const Rational& b, const Rational& c);

struct SolitonSystem {
    LinearODE2 sol1;
    LinearODE2 sol3;
};

SolitonSystem build_soliton_system(const SolitonParams& params);

/// The printed first-order equation, before normalization.
FirstOrderCleared first_order_printed(const SolitonParams& params);

struct FirstOrderReduction {
    FirstOrderCleared cleared;
    LinearODE1 normalized;
};

class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// t * [sol1 + (t-c)/t * sol3]. Throws ConstructionError if phi'' survives.
FirstOrderReduction reduce_to_first_order(const LinearODE2& sol1, const LinearODE2& sol3, const Rational& c);
/// As above, and additionally asserts equality with first_order_printed(params).
FirstOrderReduction reduce_to_first_order(const SolitonParams& params);

/// Partial-fraction forms of p and q as displayed for the soliton reduction (needs c != 0 for q).
ratcalc::PartialFractionForm printed_p_partial_fractions(const SolitonParams& params);
ratcalc::PartialFractionForm printed_q_partial_fractions(const SolitonParams& params);

struct ReductionResult {
    RationalFunction E;  ///< A(p^2 - p') - Bp + C
    RationalFunction F;  ///< D - A(q' - pq) - Bq
    std::optional<RationalFunction> forced_solution;  ///< F/E iff E != 0
};

ReductionResult lemma_reduction(const LinearODE1& first, const LinearODE2& second);

struct RatiReport {
    bool pass = false;
    SolitonParams params;
    RationalFunction E;
    RationalFunction F;
    RationalFunction expected_E;
    std::string detail;
};

/// -2bc(t-c)^2/(t(t-2c))
RationalFunction expected_rati_E(const Rational& b, const Rational& c);

RatiReport verify_rati(const SolitonParams& params);

enum class Verdict { only_zero_solution, unique_candidate, undetermined };
std::string to_string(Verdict v);

Verdict forced_conclusion(const ReductionResult& result);

}  // namespace skrp::odesys
