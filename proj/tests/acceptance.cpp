// Acceptance run: one PASS/FAIL line per criterion. Tolerances are pinned below
// and applied here, independently of the library defaults.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "skrp/dualmap/dualmap.hpp"
#include "skrp/geom/checks.hpp"
#include "skrp/odesys/soliton.hpp"
#include "skrp/ratcalc.hpp"
#include "skrp/solutions/koiso.hpp"

using namespace skrp;
using odesys::Sign;
using odesys::SolitonParams;
using ratcalc::ExpExpression;
using ratcalc::factorial;
using ratcalc::Polynomial;
using ratcalc::Rational;
using ratcalc::RationalFunction;

namespace pinned {
constexpr double rati_seconds_per_tuple = 1.0;
constexpr double kappa_spread = 1e-8;
constexpr double offblock = 1e-7;
constexpr double eigen = 1e-6;
constexpr double ricci_hessian = 1e-6;
constexpr double conformal = 1e-6;
constexpr double soliton = 1e-6;
constexpr double kahler = 1e-6;
constexpr double hermitian_affine = 1e-6;
constexpr double hermitian_linear_floor = 1e-3;
constexpr double fd_ricci = 1e-4;  // finite-difference oracle, step 1e-4
constexpr double suite_seconds = 120.0;
constexpr int min_points = 20;
constexpr double radius_node = 1e-9;
constexpr double radius_closed_form = 1e-9;
constexpr double constancy = 1e-6;
}  // namespace pinned

namespace {

using RF = RationalFunction;
RF t() { return RF::variable(); }
RF k(const Rational& r) { return RF(r); }
RF shifted(const Rational& c) { return t() - k(c); }

std::mt19937_64 rng(20261016);

Rational rnd() {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
    return Rational(num(rng), den(rng));
}

Rational rnd_nonzero() {
    for (;;) {
        const Rational r = rnd();
        if (!r.is_zero()) return r;
    }
}

SolitonParams tuple() {
    std::uniform_int_distribution<int> dim(2, 6);
    SolitonParams p{dim(rng), rnd_nonzero(), rnd_nonzero(), rnd(), rnd(), Sign::plus};
    if (std::bernoulli_distribution()(rng)) p.eps = Sign::minus;
    return p;
}

struct Outcome {
    bool pass = true;
    std::string note;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) note = what;
        pass = pass && ok;
    }
};

int failures = 0;

void report(int n, const std::function<Outcome()>& criterion) {
    Outcome o;
    try {
        o = criterion();
    } catch (const std::exception& ex) {
        o.pass = false;
        o.note = std::string("exception: ") + ex.what();
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2d: %s  %s\n", n, o.pass ? "PASS" : "FAIL", o.note.c_str());
    std::fflush(stdout);
}

std::vector<SolitonParams> tuples(int count) {
    std::vector<SolitonParams> out;
    for (int i = 0; i < count; ++i) out.push_back(tuple());
    return out;
}

geom::ModelConfig koiso_config(int m) {
    const auto k = geom::measure_kappa(geom::BaseMetric{m, 1.0, geom::BaseKind::fubini_study});
    const Rational kappa(std::lround(k.kappa));
    const auto fam = solutions::koiso_family(m, Rational(1), Rational(0), Rational(1), kappa, Sign::plus);
    geom::ModelConfig cfg;
    cfg.profile = solutions::koiso_profile(fam, {Rational(1, 2), Rational(2)});
    cfg.soliton = dualmap::SolitonSpec{fam.b, fam.e};
    cfg.samples = pinned::min_points;
    return cfg;
}

std::map<std::string, double> residuals(const geom::GeometrySuite& s) {
    std::map<std::string, double> out;
    for (const auto& c : s.checks) out[c.name] = c.residual;
    return out;
}

// Ricci of g/t^2 with all metric derivatives from central differences.
double fd_conformal_ricci_error(const geom::ModelMetric& model, const geom::Vec& x) {
    const int d = model.dim();
    const double h = 1e-4;
    auto at = [&](const geom::Vec& y) {
        geom::Mat g = model.metric_values(y);
        return geom::Mat(g / (y(0) * y(0)));
    };
    const geom::Mat g0 = at(x);
    geom::JetMatrix J(d, geom::Jet2(0.0, d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) J(i, j) = geom::Jet2(g0(i, j), d);
    for (int a = 0; a < d; ++a) {
        for (int b = a; b < d; ++b) {
            geom::Vec pp = x, pm = x, mp = x, mm = x;
            pp(a) += h, pp(b) += h;
            pm(a) += h, pm(b) -= h;
            mp(a) -= h, mp(b) += h;
            mm(a) -= h, mm(b) -= h;
            const geom::Mat dab = (at(pp) - at(pm) - at(mp) + at(mm)) / (4 * h * h);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) J(i, j).hess(a, b) = J(i, j).hess(b, a) = dab(i, j);
        }
        geom::Vec xp = x, xm = x;
        xp(a) += h;
        xm(a) -= h;
        const geom::Mat d1 = (at(xp) - at(xm)) / (2 * h);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) J(i, j).grad(a) = d1(i, j);
    }
    const geom::Curvature fd = geom::curvature_from_jets(J);
    const geom::PointGeometry ad = geom::conformal_curvature_at(model, x, 0.0);
    return (fd.ricci - ad.curvature.ricci).cwiseAbs().maxCoeff() / ad.curvature.ricci.cwiseAbs().maxCoeff();
}

}  // namespace

int main() {
    // 1. rati identity on 25 tuples, exact, under a second per tuple
    report(1, [] {
        Outcome o;
        double slowest = 0.0;
        for (const auto& p : tuples(25)) {
            const auto start = std::chrono::steady_clock::now();
            const auto r = odesys::verify_rati(p);
            slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
            const RF expected = k(Rational(-2) * p.b * p.c) * shifted(p.c) * shifted(p.c) / (t() * shifted(Rational(2) * p.c));
            o.require(r.F.is_zero(), "F != 0 for " + p.to_string());
            o.require(r.E == expected, "E mismatch for " + p.to_string() + ": " + r.E.to_string());
        }
        o.require(slowest < pinned::rati_seconds_per_tuple, "slow tuple");
        if (o.pass) o.note = "25 tuples; slowest " + std::to_string(slowest) + " s";
        return o;
    });

    // 2. bc != 0 forces the zero solution
    report(2, [] {
        Outcome o;
        for (const auto& p : tuples(25)) {
            const auto sys = odesys::build_soliton_system(p);
            const auto r = odesys::lemma_reduction(odesys::reduce_to_first_order(sys.sol1, sys.sol3, p.c).normalized, sys.sol1);
            o.require(r.forced_solution && r.forced_solution->is_zero(), "nonzero forced solution for " + p.to_string());
            o.require(odesys::forced_conclusion(r) == odesys::Verdict::only_zero_solution, p.to_string());
        }
        if (o.pass) o.note = "25 tuples, forced solution F/E = 0";
        return o;
    });

    // 3. first-order reduction against the printed equation and partial fractions
    report(3, [] {
        Outcome o;
        for (const auto& p : tuples(10)) {
            const auto sys = odesys::build_soliton_system(p);
            const auto red = odesys::reduce_to_first_order(sys.sol1, sys.sol3, p.c);
            o.require(red.cleared == odesys::first_order_printed(p), "reduction for " + p.to_string());
            const Rational ek = odesys::to_rational(p.eps) * p.kappa;
            const RF c = k(p.c), c2 = k(Rational(2) * p.c);
            const RF p_local = k(Rational(p.m)) / (t() - c) - k(1) / (t() - c2) + k(p.b) / (t() * t()) -
                               k(Rational(2 * p.m - 1)) / t();
            const RF q_local = k(ek / Rational(2)) / (t() - c) +
                               k((p.e - Rational(2) * ek * p.c) / (Rational(2) * p.c)) / (t() - c2) -
                               k(p.e / (Rational(2) * p.c)) / t();
            o.require(red.normalized.p == p_local && red.normalized.q == q_local, "normalized p, q for " + p.to_string());
            const std::vector<Rational> poles{Rational(0), p.c, Rational(2) * p.c};
            const auto pf = ratcalc::rf_partial_fractions(red.normalized.p, poles);
            const auto qf = ratcalc::rf_partial_fractions(red.normalized.q, poles);
            o.require(pf == odesys::printed_p_partial_fractions(p), "p fractions for " + p.to_string());
            o.require(qf == odesys::printed_q_partial_fractions(p), "q fractions for " + p.to_string());
            // the displays, coefficient by coefficient
            o.require(pf.coefficient(p.c, 1) == Rational(p.m) && pf.coefficient(Rational(2) * p.c, 1) == Rational(-1) &&
                          pf.coefficient(Rational(0), 2) == p.b && pf.coefficient(Rational(0), 1) == Rational(1 - 2 * p.m),
                      "p display for " + p.to_string());
            o.require(qf.coefficient(p.c, 1) == ek / Rational(2) &&
                          qf.coefficient(Rational(2) * p.c, 1) == (p.e - Rational(2) * ek * p.c) / (Rational(2) * p.c) &&
                          qf.coefficient(Rational(0), 1) == -p.e / (Rational(2) * p.c),
                      "q display for " + p.to_string());
        }
        if (o.pass) o.note = "10 tuples";
        return o;
    });

    // 4. third-order equation and its soliton form from mek
    report(4, [] {
        Outcome o;
        for (const auto& p : tuples(10)) {
            const RF alpha = (k(Rational(2 * (p.m - 1))) * t() - k(p.b)) / (t() * t());
            const auto tcp = odesys::derive_tcp(odesys::build_mek(p.m, p.c, p.kappa, p.eps, alpha), alpha, p.c);
            const RF s = shifted(p.c);
            const odesys::LinearODE3 general{s, s * alpha - k(Rational(p.m + 2)), s * alpha.derivative() + k(2) * alpha, RF()};
            o.require(tcp == general && tcp == odesys::tcp_printed(p.m, p.c, alpha), "general form for " + p.to_string());
            const RF t3 = t().pow(3);
            const RF b = k(p.b), c = k(p.c);
            const odesys::LinearODE3 display{t3 * s,
                                             k(Rational(p.m - 4)) * t3 - (k(Rational(2 * (p.m - 1))) * c + b) * t() * t() + b * c * t(),
                                             k(Rational(2 * (p.m - 1))) * t() * (t() + c) - k(2) * b * c, RF()};
            o.require(tcp.scaled(t3) == display, "soliton display for " + p.to_string());
        }
        if (o.pass) o.note = "10 tuples";
        return o;
    });

    // 5. Koiso family, homogeneous bases, perturbed A
    report(5, [] {
        Outcome o;
        int members = 0;
        for (int m : {2, 3, 4}) {
            for (int trial = 0; trial < 4; ++trial) {
                const Rational b = rnd_nonzero(), B = rnd(), C = rnd_nonzero(), kappa = rnd();
                const Sign eps = trial % 2 ? Sign::minus : Sign::plus;
                const auto fam = solutions::koiso_family(m, b, B, C, kappa, eps);
                const Rational A = odesys::to_rational(eps) * kappa / Rational(2 * m) + B * b.pow(m) / factorial(m);
                o.require(fam.A == A && fam.e == b * A, "constraint for m = " + std::to_string(m));
                RF sum0, sum1;
                for (int l = 0; l <= m; ++l) {
                    const RF term = k(b.pow(m - l) / factorial(m - l)) * t().pow(l);
                    sum0 += term;
                    if (l >= 1) sum1 += term;
                }
                const ExpExpression phi = ExpExpression(k(A) + k(B) * sum1) + ExpExpression::exp_term(k(C) * t().pow(m), k(b) / t());
                o.require(phi == fam.phi, "closed form for m = " + std::to_string(m));
                const auto sys = solutions::koiso_system(m, b, kappa, eps, fam.e);
                o.require(solutions::residual(sys.sol1, phi).is_zero() && solutions::residual(sys.sol3, phi).is_zero(),
                          "residual for m = " + std::to_string(m));
                const auto hom = solutions::koiso_system(m, b, Rational(0), eps, Rational(0));
                const ExpExpression expo = ExpExpression::exp_term(t().pow(m), k(b) / t());
                o.require(solutions::residual(hom.sol1, expo).is_zero() && solutions::residual(hom.sol3, expo).is_zero(),
                          "t^m exp(b/t) basis");
                o.require(solutions::residual(hom.sol1, ExpExpression(sum0)).is_zero(), "first polynomial basis");
                o.require(solutions::residual(hom.sol3, ExpExpression(sum1)).is_zero(), "second polynomial basis");
                const ExpExpression bumped = phi + ExpExpression(Rational(1, 10));
                o.require(!solutions::residual(sys.sol1, bumped).is_zero() || !solutions::residual(sys.sol3, bumped).is_zero(),
                          "perturbed A not detected");
                ++members;
            }
        }
        if (o.pass) o.note = std::to_string(members) + " members, m = 2, 3, 4; bases summed over l = 0..m and l = 1..m";
        return o;
    });

    // 6. mek identity on 20 random polynomial profiles
    report(6, [] {
        Outcome o;
        std::uniform_int_distribution<int> dim(2, 6), deg(1, 4);
        for (int i = 0; i < 20; ++i) {
            std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
            for (auto& x : c) x = rnd();
            c.back() = rnd_nonzero();
            const solutions::SkrpProfile p{dim(rng), rnd(), rnd(), Sign::plus, ExpExpression(RF(Polynomial(c))), {}};
            const auto r = solutions::verify_mek_identity(p);
            o.require(r.pass && !r.skipped, "phi = " + p.phi.to_string() + ": " + r.detail);
        }
        if (o.pass) o.note = "20 profiles, degree <= 4";
        return o;
    });

    // 7. duality
    report(7, [] {
        Outcome o;
        int pairs = 0;
        for (int n : {4, 6, 8}) {
            for (int trial = 0; trial < 4; ++trial) {
                solutions::SkrpProfile prof;
                if (trial % 2) {
                    const auto fam = solutions::koiso_family(n / 2, rnd_nonzero(), rnd(), rnd_nonzero(), rnd(), Sign::plus);
                    prof = solutions::koiso_profile(fam, {Rational(1), Rational(2)});
                } else {
                    std::vector<Rational> c{rnd(), rnd(), rnd_nonzero()};
                    prof = {n / 2, Rational(0), rnd(), Sign::plus, ExpExpression(RF(Polynomial(c))), {Rational(1), Rational(2)}};
                }
                const auto p = dualmap::pair_from_profile(prof);
                const auto back = dualmap::dualize(dualmap::dualize(p).in_hat).in_hat;
                o.require(back.alpha == p.alpha && back.gamma == p.gamma && back.Q == p.Q && back.laplacian == p.laplacian,
                          "involution, n = " + std::to_string(n));
                ++pairs;
            }
        }
        for (int m : {2, 3, 4}) {
            const auto fam = solutions::koiso_family(m, rnd_nonzero(), rnd(), rnd_nonzero(), rnd(), Sign::plus);
            const auto prof = solutions::koiso_profile(fam, {Rational(1), Rational(2)});
            const auto d = solutions::qet_derive(prof);
            const auto [alpha, gamma] = solutions::alpha_gamma(prof);
            // soliton -> (alpha, gamma)
            const auto [sa, sg] = dualmap::soliton_coefficients(2 * m, {fam.b, fam.e}, d.Q, d.laplacian);
            o.require(sa == alpha && sg == gamma, "soliton coefficients, m = " + std::to_string(m));
            // (alpha, gamma) -> soliton: b and e read back as constants
            const ExpExpression b_back = (ExpExpression(k(Rational(2 * m - 2)) / t()) - alpha) * (t() * t());
            const ExpExpression e_back =
                (gamma + d.laplacian / t() - ExpExpression(k(Rational(2 * m - 1)) / (t() * t()) - k(fam.b) / t().pow(3)) * d.Q) *
                (t() * t());
            o.require(b_back == ExpExpression(fam.b) && e_back == ExpExpression(fam.e), "converse, m = " + std::to_string(m));
            // hatted profile and Q for c = 0
            const auto dual = dualmap::dualize(dualmap::pair_from_profile(prof));
            const ExpExpression phi_hat = fam.phi.substitute(t().inverse());
            o.require(dual.in_hat.Q == ExpExpression(k(2) * t()) * phi_hat, "Q_hat = 2 t phi_hat, m = " + std::to_string(m));
            o.require(solutions::dual_profile_check(fam).pass, "dual_profile_check");
        }
        const auto ex = solutions::koiso_family(2, Rational(1), Rational(0), Rational(1), Rational(4), Sign::plus);
        const ExpExpression expected = ExpExpression(k(2) * t()) + ExpExpression::exp_term(k(2) / t(), t());
        o.require(solutions::dual_profile_check(ex).Q_hat == expected, "Q_hat = 2t[1 + t^-2 e^t]");
        if (o.pass) o.note = std::to_string(pairs) + " pairs; coefficients both directions for m = 2, 3, 4";
        return o;
    });

    // 8-10 share the geometry runs
    std::map<int, geom::GeometrySuite> suites;
    std::map<int, double> seconds;
    std::map<int, double> fd_error;
    for (int m : {2, 3}) {
        const auto cfg = koiso_config(m);
        const auto start = std::chrono::steady_clock::now();
        suites[m] = geom::run_geometry_suite(cfg, geom::Execution::parallel);
        seconds[m] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const geom::ModelMetric model(cfg);
        fd_error[m] = fd_conformal_ricci_error(model, geom::sample_points(model, 1, 99).front());
    }

    report(8, [&] {
        Outcome o;
        double total = 0.0;
        for (int m : {2, 3}) {
            const auto& s = suites[m];
            auto r = residuals(s);
            const std::string tag = " (m = " + std::to_string(m) + ")";
            o.require(static_cast<int>(s.points.size()) >= pinned::min_points, "points" + tag);
            o.require(r.at("point_evaluation_errors") == 0.0, "point errors" + tag);
            o.require(r.at("base_kappa_spread") < pinned::kappa_spread, "kappa spread" + tag);
            o.require(r.at("hessian_offblock") < pinned::offblock && r.at("ricci_offblock") < pinned::offblock, "off-block" + tag);
            for (const char* name : {"hessian_eigen_phi", "hessian_eigen_psi", "ricci_eigen_lambda", "ricci_eigen_mu"}) {
                o.require(r.at(name) < pinned::eigen, name + tag);
            }
            o.require(r.at("ricci_hessian") < pinned::ricci_hessian, "Ricci-Hessian" + tag);
            o.require(r.at("conformal_ricci") < pinned::conformal && r.at("conformal_hessian_inverse") < pinned::conformal,
                      "conformal formulas" + tag);
            o.require(r.at("soliton") < pinned::soliton && r.at("soliton_f_tau") < pinned::soliton, "soliton" + tag);
            o.require(r.at("kahler_nabla_J") < pinned::kahler && r.at("kahler_hat_nabla_Jbar") < pinned::kahler, "Kaehler" + tag);
            o.require(r.at("hermitian_affine_inverse") < pinned::hermitian_affine, "Hermitian f = b/t" + tag);
            o.require(r.at("negative_hermitian_linear") > pinned::hermitian_linear_floor, "Hermitian f = t" + tag);
            o.require(fd_error[m] < pinned::fd_ricci, "finite-difference Ricci oracle" + tag);
            total += seconds[m];
        }
        o.require(total < pinned::suite_seconds, "runtime");
        if (o.pass) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "m = 2, 3 with %d points each; soliton %.1e / %.1e; %.1f s", pinned::min_points,
                          residuals(suites[2]).at("soliton"), residuals(suites[3]).at("soliton"), total);
            o.note = buf;
        }
        return o;
    });

    report(9, [&] {
        Outcome o;
        for (int m : {2, 3}) {
            o.require(suites[m].radius_node_residual < pinned::radius_node, "node residual");
            o.require(suites[m].radius_monotone, "monotone");
        }
        const double ref = 1.25;
        const geom::RadiusProfile quad([](double x) { return 2 * x * x; }, 1.0, 0.5, 2.0);
        const geom::RadiusProfile lin([](double x) { return 2.5 * x; }, 2.5, 0.5, 2.0);
        for (double x : quad.nodes()) {
            const double expected = std::exp(-1.0 / (2 * x) + 1.0 / (2 * ref));
            o.require(std::abs(quad.r(x) / expected - 1) < pinned::radius_closed_form, "Q = 2t^2");
            o.require(std::abs(lin.r(x) / (x / ref) - 1) < pinned::radius_closed_form, "Q = a t");
        }
        o.require(quad.node_residual() < pinned::radius_node && lin.node_residual() < pinned::radius_node, "closed-form nodes");
        if (o.pass) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "node residual %.1e", suites[2].radius_node_residual);
            o.note = buf;
        }
        return o;
    });

    report(10, [&] {
        Outcome o;
        for (int m : {2, 3}) {
            const auto& c = suites[m].constancy;
            o.require(c.c_spread < pinned::constancy && c.c_error < pinned::constancy, "c");
            o.require(c.kappa_spread < pinned::constancy && c.kappa_error < pinned::constancy, "kappa");
            o.require(std::abs(c.kappa_mean - 2.0 * m) < pinned::constancy * 2.0 * m, "kappa value");
        }
        if (o.pass) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "c = %.1e, kappa = %.12g (m = 2), %.12g (m = 3)", suites[2].constancy.c_mean,
                          suites[2].constancy.kappa_mean, suites[3].constancy.kappa_mean);
            o.note = buf;
        }
        return o;
    });

    return failures == 0 ? 0 : 1;
}
