#include <functional>
#include <random>

#include "skrp/cli/suites.hpp"
#include "skrp/dualmap/dualmap.hpp"
#include "skrp/odesys/soliton.hpp"
#include "skrp/ratcalc.hpp"

namespace skrp::cli {

namespace {

using odesys::Sign;
using odesys::SolitonParams;
using ratcalc::ExpExpression;
using ratcalc::Polynomial;
using ratcalc::RationalFunction;
using nlohmann::json;

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 5);
    return Rational(num(rng), den(rng));
}

Rational random_nonzero(std::mt19937_64& rng) {
    for (;;) {
        Rational r = random_rational(rng);
        if (!r.is_zero()) return r;
    }
}

SolitonParams random_tuple(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dim(2, 6);
    std::bernoulli_distribution coin;
    SolitonParams p;
    p.m = dim(rng);
    p.b = random_nonzero(rng);
    p.c = random_nonzero(rng);
    p.kappa = random_rational(rng);
    p.e = random_rational(rng);
    p.eps = coin(rng) ? Sign::plus : Sign::minus;
    return p;
}

SolitonParams configured_tuple(const RunConfig& cfg) { return {cfg.m, cfg.b, cfg.c, cfg.kappa, cfg.e, cfg.eps}; }

// A failure message, or nothing on success. Exceptions count as failures.
using TupleCheck = std::function<std::optional<std::string>(const SolitonParams&)>;

std::optional<std::string> guarded(const TupleCheck& check, const SolitonParams& p) {
    try {
        return check(p);
    } catch (const std::exception& ex) {
        return std::string("exception: ") + ex.what();
    }
}

CheckEntry single(const std::string& name, const TupleCheck& check, const SolitonParams& p) {
    const auto failure = guarded(check, p);
    return exact_check(name, !failure, failure.value_or(""), {{"tuple", p.to_string()}});
}

CheckEntry sweep(const std::string& name, const TupleCheck& check, const std::vector<SolitonParams>& tuples,
                 std::uint64_t seed) {
    int failures = 0;
    std::string first;
    for (const auto& p : tuples) {
        if (auto f = guarded(check, p)) {
            if (failures++ == 0) first = p.to_string() + ": " + *f;
        }
    }
    std::string detail = std::to_string(tuples.size() - failures) + "/" + std::to_string(tuples.size()) + " tuples";
    if (failures) detail += "; first failure " + first;
    return exact_check(name, failures == 0 && !tuples.empty(), detail, {{"tuples", tuples.size()}, {"seed", seed}});
}

std::optional<std::string> check_rati(const SolitonParams& p) {
    const auto r = odesys::verify_rati(p);
    if (r.pass) return std::nullopt;
    return r.detail;
}

std::optional<std::string> check_no_nonzero_solution(const SolitonParams& p) {
    const auto sys = odesys::build_soliton_system(p);
    const auto r = odesys::lemma_reduction(odesys::reduce_to_first_order(sys.sol1, sys.sol3, p.c).normalized, sys.sol1);
    const auto v = odesys::forced_conclusion(r);
    if (v == odesys::Verdict::only_zero_solution) return std::nullopt;
    return odesys::to_string(v);
}

std::optional<std::string> check_first_order(const SolitonParams& p) {
    // the two-argument overload throws on disagreement with the printed equation
    const auto red = odesys::reduce_to_first_order(p);
    if (red.cleared == odesys::first_order_printed(p)) return std::nullopt;
    return "reduction differs from the printed first-order equation";
}

std::optional<std::string> compare_fractions(const ratcalc::PartialFractionForm& derived,
                                              const ratcalc::PartialFractionForm& printed) {
    if (derived == printed) {
        return std::nullopt;
    }
    return "derived " + derived.to_string() + " vs printed " + printed.to_string();
}

std::vector<Rational> reduction_poles(const SolitonParams& p) { return {Rational(0), p.c, Rational(2) * p.c}; }

std::optional<std::string> check_p_fractions(const SolitonParams& p) {
    const auto n = odesys::reduce_to_first_order(p).normalized;
    return compare_fractions(ratcalc::rf_partial_fractions(n.p, reduction_poles(p)),
                             odesys::printed_p_partial_fractions(p));
}

std::optional<std::string> check_q_fractions(const SolitonParams& p) {
    const auto n = odesys::reduce_to_first_order(p).normalized;
    return compare_fractions(ratcalc::rf_partial_fractions(n.q, reduction_poles(p)),
                             odesys::printed_q_partial_fractions(p));
}

std::optional<std::string> check_tcp(const SolitonParams& p) {
    const RationalFunction alpha = odesys::soliton_alpha(p.m, p.b);
    const auto tcp = odesys::derive_tcp(odesys::build_mek(p.m, p.c, p.kappa, p.eps, alpha), alpha, p.c);
    if (!(tcp == odesys::tcp_printed(p.m, p.c, alpha))) return "derived " + tcp.to_string() + " differs from the general form";
    const RationalFunction t3 = RationalFunction::variable().pow(3);
    const auto display = odesys::soliton_tcp_printed(p.m, p.b, p.c);
    if (!(tcp.scaled(t3) == display)) return "t^3 * derived " + tcp.scaled(t3).to_string() + " vs " + display.to_string();
    return std::nullopt;
}

void add_koiso_body(const RunConfig& cfg, Report& report);

void add_koiso_checks(const RunConfig& cfg, Report& report) {
    try {
        add_koiso_body(cfg, report);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& ex) {
        report.checks.push_back(exact_check("koiso_checks", false, ex.what()));
    }
}

void add_koiso_body(const RunConfig& cfg, Report& report) {
    json params = {{"m", cfg.m}, {"b", cfg.b.to_string()}, {"B", cfg.B.to_string()}, {"C", cfg.C.to_string()},
                   {"kappa", cfg.kappa.to_string()}, {"eps", odesys::to_string(cfg.eps)}};
    solutions::KoisoFamily fam;
    try {
        fam = family_of(cfg);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& ex) {
        report.checks.push_back(exact_check("koiso_family", false, ex.what(), params));
        return;
    }
    params["A"] = fam.A.to_string();
    params["e"] = fam.e.to_string();
    const auto sys = solutions::koiso_system(fam.m, fam.b, fam.kappa, fam.eps, fam.e);
    const ExpExpression r1 = solutions::residual(sys.sol1, fam.phi);
    const ExpExpression r3 = solutions::residual(sys.sol3, fam.phi);
    report.checks.push_back(exact_check("koiso_residual_first", r1.is_zero(), "residual = " + r1.to_string(), params));
    report.checks.push_back(exact_check("koiso_residual_second", r3.is_zero(), "residual = " + r3.to_string(), params));
    if (cfg.A) {
        report.checks.push_back(exact_check("koiso_A_matches_constraint", *cfg.A == fam.A,
                                            "given A = " + cfg.A->to_string() + ", derived A = " + fam.A.to_string(),
                                            params));
    }

    const auto hom = solutions::koiso_system(fam.m, fam.b, Rational(0), fam.eps, Rational(0));
    const ExpExpression expo = solutions::koiso_exp_solution(fam.m, fam.b);
    const ExpExpression first(RationalFunction(solutions::koiso_basis_first(fam.m, fam.b)));
    const ExpExpression second(RationalFunction(solutions::koiso_basis_second(fam.m, fam.b)));
    const bool bases = solutions::residual(hom.sol1, expo).is_zero() && solutions::residual(hom.sol3, expo).is_zero() &&
                       solutions::residual(hom.sol1, first).is_zero() && solutions::residual(hom.sol3, second).is_zero();
    report.checks.push_back(exact_check("koiso_homogeneous_bases", bases,
                                        "t^m exp(b/t), " + first.to_string() + ", " + second.to_string(), params));

    // A + 1/10 must break both equations
    const ExpExpression bumped = fam.phi + ExpExpression(Rational(1, 10));
    const ExpExpression b1 = solutions::residual(sys.sol1, bumped);
    const ExpExpression b3 = solutions::residual(sys.sol3, bumped);
    report.checks.push_back(exact_check("koiso_perturbed_A_control", !b1.is_zero() && !b3.is_zero(),
                                        "residuals " + b1.to_string() + "; " + b3.to_string(), params));

    const auto profile = solutions::koiso_profile(fam, {cfg.tau_min, cfg.tau_max});
    const auto mek = solutions::verify_mek_identity(profile);
    report.checks.push_back(exact_check("mek_identity_koiso", mek.pass, mek.detail, params));

    // f = b/t: no dt (x) dt term, Hessian coefficient is the soliton alpha, metric side is gamma
    const int n = 2 * fam.m;
    const RationalFunction t = RationalFunction::variable();
    const RationalFunction f1 = -RationalFunction(fam.b) / (t * t);
    const auto coeffs = dualmap::f_tau_coefficients(n, f1, f1.derivative());
    const auto d = solutions::qet_derive(profile);
    const auto [alpha, gamma] = solutions::alpha_gamma(profile);
    const bool affine = coeffs.dtau_dtau.is_zero() && ExpExpression(coeffs.hessian) == alpha &&
                        coeffs.metric_coefficient(fam.e, d.Q, d.laplacian) == gamma;
    report.checks.push_back(exact_check("f_tau_affine_inverse", affine,
                                        "dt(x)dt coefficient = " + coeffs.dtau_dtau.to_string(), params));
    const auto linear = dualmap::f_tau_coefficients(n, RationalFunction(1), RationalFunction());
    report.checks.push_back(exact_check("f_tau_linear_control", !linear.dtau_dtau.is_zero(),
                                        "f = t: dt(x)dt coefficient = " + linear.dtau_dtau.to_string(), params));
}

void add_mek_random(const RunConfig& cfg, Report& report) {
    std::mt19937_64 rng(cfg.seed ^ 0x6d656bULL);
    std::uniform_int_distribution<int> dim(2, 6);
    std::uniform_int_distribution<int> deg(1, 4);
    const int count = 20;
    int failures = 0;
    std::string first;
    for (int i = 0; i < count; ++i) {
        solutions::SkrpProfile p;
        p.m = dim(rng);
        p.c = random_rational(rng);
        p.kappa = random_rational(rng);
        p.eps = std::bernoulli_distribution()(rng) ? Sign::plus : Sign::minus;
        std::vector<Rational> coeffs(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& x : coeffs) x = random_rational(rng);
        coeffs.back() = random_nonzero(rng);
        p.phi = ExpExpression(RationalFunction(Polynomial(coeffs)));
        std::string why;
        bool ok = false;
        try {
            const auto r = solutions::verify_mek_identity(p);
            ok = r.pass;
            why = r.detail;
        } catch (const std::exception& ex) {
            why = ex.what();
        }
        if (!ok && failures++ == 0) first = "phi = " + p.phi.to_string() + ": " + why;
    }
    std::string detail = std::to_string(count - failures) + "/" + std::to_string(count) + " profiles";
    if (failures) detail += "; first failure " + first;
    report.checks.push_back(exact_check("mek_identity_random", failures == 0, detail,
                                        {{"profiles", count}, {"max_degree", 4}, {"seed", cfg.seed}}));
}

void add_dual_koiso(const RunConfig& cfg, const solutions::KoisoFamily& fam, const json& params, Report& report);

}  // namespace

solutions::KoisoFamily family_of(const RunConfig& config) {
    validate(config);
    if (config.b.is_zero()) throw ConfigError("soliton constant b must be nonzero");
    return solutions::koiso_family(config.m, config.b, config.B, config.C, config.kappa, config.eps);
}

Report run_symbolic_suite(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.b.is_zero()) throw ConfigError("soliton constant b must be nonzero");
    Report report;
    report.mode = "symbolic";
    report.config = cfg.echo();

    const SolitonParams mine = configured_tuple(cfg);
    if (!cfg.c.is_zero()) {
        report.checks.push_back(single("rati", check_rati, mine));
        report.checks.push_back(single("no_nonzero_solution", check_no_nonzero_solution, mine));
        report.checks.push_back(single("first_order_reduction", check_first_order, mine));
        report.checks.push_back(single("partial_fractions_p", check_p_fractions, mine));
        report.checks.push_back(single("partial_fractions_q", check_q_fractions, mine));
    } else {
        report.skipped.push_back({"rati", "configured c = 0; the identity concerns b c != 0 (covered by the sweep)"});
    }
    report.checks.push_back(single("third_order_from_mek", check_tcp, mine));

    std::mt19937_64 rng(cfg.seed);
    std::vector<SolitonParams> tuples;
    for (int i = 0; i < cfg.sweep; ++i) tuples.push_back(random_tuple(rng));
    if (!tuples.empty()) {
        report.checks.push_back(sweep("rati_sweep", check_rati, tuples, cfg.seed));
        report.checks.push_back(sweep("no_nonzero_solution_sweep", check_no_nonzero_solution, tuples, cfg.seed));
        report.checks.push_back(sweep("first_order_reduction_sweep", check_first_order, tuples, cfg.seed));
        report.checks.push_back(sweep("partial_fractions_sweep",
                                      [](const SolitonParams& p) -> std::optional<std::string> {
                                          if (auto f = check_p_fractions(p)) return "p: " + *f;
                                          if (auto f = check_q_fractions(p)) return "q: " + *f;
                                          return std::nullopt;
                                      },
                                      tuples, cfg.seed));
        report.checks.push_back(sweep("third_order_from_mek_sweep", check_tcp, tuples, cfg.seed));
    } else {
        report.skipped.push_back({"sweep", "sweep = 0"});
    }

    add_koiso_checks(cfg, report);
    add_mek_random(cfg, report);
    report.append(run_dual_suite(cfg));
    return report;
}

Report run_dual_suite(const RunConfig& cfg) {
    validate(cfg);
    Report report;
    report.mode = "dual";
    report.config = cfg.echo();

    // involution on pairs from random polynomial profiles and Koiso members, n = 4, 6, 8
    std::mt19937_64 rng(cfg.seed ^ 0x6475616cULL);
    int total = 0, failures = 0;
    std::string first;
    for (int n : {4, 6, 8}) {
        for (int trial = 0; trial < 6; ++trial) {
            solutions::SkrpProfile prof;
            try {
                if (trial % 2 == 0) {
                    const auto fam = solutions::koiso_family(n / 2, random_nonzero(rng), random_rational(rng),
                                                             random_nonzero(rng), random_rational(rng), Sign::plus);
                    prof = solutions::koiso_profile(fam, {Rational(1), Rational(2)});
                } else {
                    prof.m = n / 2;
                    prof.kappa = random_rational(rng);
                    Polynomial poly;
                    while (poly.degree() < 1) {
                        std::vector<Rational> c(4);
                        for (auto& x : c) x = random_rational(rng);
                        poly = Polynomial(c);
                    }
                    prof.phi = ExpExpression(RationalFunction(poly));
                    prof.domain = {Rational(1), Rational(2)};
                }
                ++total;
                const auto p = dualmap::pair_from_profile(prof);
                const auto back = dualmap::dualize(dualmap::dualize(p).in_hat).in_hat;
                const bool ok = back.alpha == p.alpha && back.gamma == p.gamma && back.Q == p.Q &&
                                back.laplacian == p.laplacian;
                if (!ok && failures++ == 0) first = "phi = " + prof.phi.to_string();
            } catch (const std::exception& ex) {
                if (failures++ == 0) first = ex.what();
            }
        }
    }
    report.checks.push_back(exact_check("dualize_involution", failures == 0,
                                        std::to_string(total - failures) + "/" + std::to_string(total) + " pairs" +
                                            (failures ? "; first failure " + first : ""),
                                        {{"n", {4, 6, 8}}, {"seed", cfg.seed}}));

    if (cfg.b.is_zero()) {
        report.skipped.push_back({"dual_profile", "b = 0"});
        return report;
    }
    json params = {{"m", cfg.m}, {"b", cfg.b.to_string()}, {"B", cfg.B.to_string()}, {"C", cfg.C.to_string()},
                   {"kappa", cfg.kappa.to_string()}};
    solutions::KoisoFamily fam;
    try {
        fam = family_of(cfg);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& ex) {
        report.checks.push_back(exact_check("dual_koiso_family", false, ex.what(), params));
        return report;
    }
    try {
        add_dual_koiso(cfg, fam, params, report);
    } catch (const std::exception& ex) {
        report.checks.push_back(exact_check("dual_koiso_checks", false, ex.what(), params));
    }
    return report;
}

namespace {

void add_dual_koiso(const RunConfig& cfg, const solutions::KoisoFamily& fam, const json& params, Report& report) {
    const auto dp = solutions::dual_profile_check(fam);
    report.checks.push_back(exact_check("dual_profile", dp.pass, dp.detail, params));

    const auto profile = solutions::koiso_profile(fam, {cfg.tau_min, cfg.tau_max});
    const auto d = solutions::qet_derive(profile);
    const auto [alpha, gamma] = solutions::alpha_gamma(profile);
    const auto [sa, sg] = dualmap::soliton_coefficients(2 * fam.m, {fam.b, fam.e}, d.Q, d.laplacian);
    report.checks.push_back(exact_check("soliton_coefficients_match", sa == alpha && sg == gamma,
                                        "alpha = " + alpha.to_string(), params));
    const auto [wa, wg] = dualmap::soliton_coefficients(2 * fam.m, {fam.b, fam.e + Rational(1)}, d.Q, d.laplacian);
    report.checks.push_back(exact_check("soliton_coefficients_control", wg != gamma,
                                        "e + 1 must change gamma", params));

    const auto sd = dualmap::skrp_dualize(profile, cfg.a);
    report.checks.push_back(exact_check("skrp_dualize", sd.pass(), "Q_hat = " + sd.Q_hat.to_string() +
                                                                       (sd.note.empty() ? "" : "; " + sd.note),
                                        params));
}

}  // namespace

}  // namespace skrp::cli
