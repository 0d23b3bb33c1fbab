#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "skrp/geom/checks.hpp"
#include "skrp/solutions/koiso.hpp"

using namespace skrp;
using namespace skrp::geom;
using ratcalc::ExpExpression;
using ratcalc::Rational;
using ratcalc::RationalFunction;

namespace {

ModelConfig koiso_config(int m, bool perturb = false) {
    auto fam = solutions::koiso_family(m, Rational(1), Rational(0), Rational(1), Rational(2 * m), odesys::Sign::plus);
    ModelConfig cfg;
    cfg.profile = solutions::koiso_profile(fam, {Rational(1, 2), Rational(2)});
    if (perturb) {
        // A -> A + 1/10 adds 1/10 to phi
        cfg.profile.phi += ExpExpression(Rational(1, 10));
    }
    cfg.soliton = dualmap::SolitonSpec{fam.b, fam.e};
    return cfg;
}

// phi = t, c = 0; kappa matches the m = 2 base
ModelConfig linear_config() {
    ModelConfig cfg;
    cfg.profile.m = 2;
    cfg.profile.c = Rational(0);
    cfg.profile.kappa = Rational(4);
    cfg.profile.phi = ExpExpression(RationalFunction::variable());
    cfg.profile.domain = {Rational(1, 2), Rational(2)};
    return cfg;
}

const CheckRecord& find_check(const std::vector<CheckRecord>& checks, const std::string& name) {
    auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckRecord& c) { return c.name == name; });
    REQUIRE_MESSAGE(it != checks.end(), name);
    return *it;
}

// Curvature with first and second metric derivatives from central differences only.
template <typename F>
Curvature fd_curvature(F&& metric, const Vec& x, double h) {
    const int d = static_cast<int>(x.size());
    auto at = [&](const Vec& y) {
        auto s = metric(y.data());
        Mat g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g(i, j) = s(i, j);
        return g;
    };
    const Mat g0 = at(x);
    JetMatrix J(d, Jet2(0.0, d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) J(i, j) = Jet2(g0(i, j), d);
    for (int k = 0; k < d; ++k) {
        Vec xp = x, xm = x;
        xp(k) += h;
        xm(k) -= h;
        const Mat gp = at(xp), gm = at(xm);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                J(i, j).grad(k) = (gp(i, j) - gm(i, j)) / (2 * h);
                J(i, j).hess(k, k) = (gp(i, j) - 2 * g0(i, j) + gm(i, j)) / (h * h);
            }
        for (int l = k + 1; l < d; ++l) {
            Vec pp = x, pm = x, mp = x, mm = x;
            pp(k) += h, pp(l) += h;
            pm(k) += h, pm(l) -= h;
            mp(k) -= h, mp(l) += h;
            mm(k) -= h, mm(l) -= h;
            const Mat dkl = (at(pp) - at(pm) - at(mp) + at(mm)) / (4 * h * h);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    J(i, j).hess(k, l) = dkl(i, j);
                    J(i, j).hess(l, k) = dkl(i, j);
                }
        }
    }
    return curvature_from_jets(J);
}

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("jet arithmetic follows the truncated Taylor rules") {
    const int d = 2;
    const Jet2 x = Jet2::variable(0.7, 0, d);
    const Jet2 y = Jet2::variable(-1.3, 1, d);
    const Jet2 f = x * y;
    CHECK(f.value == doctest::Approx(0.7 * -1.3));
    CHECK(f.grad(0) == doctest::Approx(-1.3));
    CHECK(f.grad(1) == doctest::Approx(0.7));
    CHECK(f.hess(0, 1) == doctest::Approx(1.0));
    CHECK(f.hess(0, 0) == doctest::Approx(0.0));

    const Jet2 q = 1.0 / x;
    CHECK(q.grad(0) == doctest::Approx(-1.0 / (0.7 * 0.7)));
    CHECK(q.hess(0, 0) == doctest::Approx(2.0 / (0.7 * 0.7 * 0.7)));

    const Jet2 e = exp(x * x);
    CHECK(e.hess(0, 0) == doctest::Approx((2 + 4 * 0.49) * std::exp(0.49)));
    const Jet2 l = log(x);
    CHECK(l.hess(0, 0) == doctest::Approx(-1.0 / 0.49));
    const Jet2 p = pow(y, 3);
    CHECK(p.grad(1) == doctest::Approx(3 * 1.69));
    CHECK(p.hess(1, 1) == doctest::Approx(6 * -1.3));
    const Jet2 s = sqrt(x);
    CHECK(s.grad(0) == doctest::Approx(0.5 / std::sqrt(0.7)));

    CHECK_THROWS_AS(Jet2(0.0, d).reciprocal(), std::domain_error);
    CHECK_THROWS_AS(log(-x), std::domain_error);

    // x / x is the constant 1
    const Jet2 one = x / x;
    CHECK(one.value == doctest::Approx(1.0));
    CHECK(one.grad.norm() < 1e-15);
    CHECK(max_abs(one.hess) < 1e-14);
}

TEST_CASE("metric jets agree with central differences") {
    for (int m : {2, 3}) {
        const ModelMetric model(koiso_config(m));
        const int d = model.dim();
        const auto pts = sample_points(model, 5, 11);
        const double h = 1e-5;
        for (const Vec& x : pts) {
            const JetMatrix J = model.metric_jets(x);
            for (int k = 0; k < d; ++k) {
                Vec xp = x, xm = x;
                xp(k) += h;
                xm(k) -= h;
                const Mat gp = model.metric_values(xp), gm = model.metric_values(xm);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        const double scale = std::max(1.0, std::abs(J(i, j).value));
                        const double fd1 = (gp(i, j) - gm(i, j)) / (2 * h);
                        CHECK(std::abs(fd1 - J(i, j).grad(k)) < 1e-5 * scale);
                    }
                // second derivatives from differences of the jet gradient
                const JetMatrix Jp = model.metric_jets(xp), Jm = model.metric_jets(xm);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        const double scale = std::max(1.0, J(i, j).hess.cwiseAbs().maxCoeff());
                        for (int l = 0; l < d; ++l) {
                            const double fd2 = (Jp(i, j).grad(l) - Jm(i, j).grad(l)) / (2 * h);
                            CHECK(std::abs(fd2 - J(i, j).hess(k, l)) < 1e-5 * scale);
                        }
                    }
            }
        }
    }
}

TEST_CASE("euclidean and round-sphere test doubles") {
    const Vec x = (Vec(3) << 0.3, -0.2, 0.9).finished();
    auto flat = [](const auto* y) {
        using S = std::decay_t<decltype(y[0])>;
        SquareMatrix<S> g(3, y[0] * 0.0);
        for (int i = 0; i < 3; ++i) g(i, i) = y[0] * 0.0 + 1.0;
        return g;
    };
    const Curvature c = curvature_from_jets(metric_jets_of(flat, x));
    CHECK(max_abs(c.ricci) < 1e-12);

    // stereographic round sphere of radius 1: Ric = g
    auto sphere = [](const auto* y) {
        using S = std::decay_t<decltype(y[0])>;
        const S w = 1.0 + y[0] * y[0] + y[1] * y[1];
        const S f = 4.0 / (w * w);
        SquareMatrix<S> g(2, y[0] * 0.0);
        g(0, 0) = f;
        g(1, 1) = f;
        return g;
    };
    const Vec z = (Vec(2) << 0.4, -0.7).finished();
    const Curvature s = curvature_from_jets(metric_jets_of(sphere, z));
    CHECK(max_abs(s.ricci - s.g) < 1e-12);

    JetMatrix singular(2, Jet2(0.0, 2));
    CHECK_THROWS_AS(curvature_from_jets(singular), SingularMetric);
}

TEST_CASE("Fubini-Study base metric") {
    BaseMetric base{2, 1.0, BaseKind::fubini_study};
    const double origin[2] = {0.0, 0.0};
    const auto h0 = base.metric(origin);
    CHECK(h0(0, 0) == 1.0);
    CHECK(h0(1, 1) == 1.0);
    CHECK(h0(0, 1) == 0.0);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    BaseMetric doubled = base;
    doubled.s0 = 2.0;
    for (int m : {2, 3}) {
        base.m = doubled.m = m;
        for (int k = 0; k < 10; ++k) {
            std::vector<double> z(static_cast<std::size_t>(base.dim()));
            for (auto& v : z) v = u(rng);
            const auto h1 = base.metric(z.data());
            const auto h2 = doubled.metric(z.data());
            for (std::size_t i = 0; i < h1.a.size(); ++i) CHECK(h2.a[i] == doctest::Approx(2 * h1.a[i]).epsilon(1e-15));
        }
        CHECK(base_closedness_residual(base, 10, 5) < 1e-6);
    }
}

TEST_CASE("measured Einstein constant of the base") {
    for (int m : {2, 3, 4}) {
        const BaseMetric base{m, 1.0, BaseKind::fubini_study};
        const KappaMeasurement k = measure_kappa(base);
        CHECK(k.spread < 1e-8);
        CHECK(k.einstein_residual < 1e-8);
        // under h = Re sum u_{i jbar} dz dzbar with u = s0 log(1+|z|^2)
        CHECK(k.kappa == doctest::Approx(2.0 * m).epsilon(1e-10));
        const BaseMetric doubled{m, 2.0, BaseKind::fubini_study};
        CHECK(measure_kappa(doubled).kappa == doctest::Approx(k.kappa / 2).epsilon(1e-10));
    }
    CHECK(measure_kappa(BaseMetric{2, 1.0, BaseKind::flat}).kappa == 0.0);

    // base Ricci against the measured constant at a single point
    const BaseMetric base{3, 1.5, BaseKind::fubini_study};
    const double kappa = measure_kappa(base).kappa;
    const Vec z = (Vec(4) << 0.1, 0.4, -0.3, 0.2).finished();
    const Curvature c = curvature_from_jets(base_metric_jets(base, z));
    CHECK(max_abs(c.ricci - kappa * c.g) / max_abs(c.ricci) < 1e-8);
}

TEST_CASE("connection form") {
    const BaseMetric flat{2, 1.0, BaseKind::flat};
    CHECK(validate_connection(flat, 1.0).residual < 1e-9);
    const BaseMetric fs{2, 1.0, BaseKind::fubini_study};
    CHECK(validate_connection(fs, 1.0).residual < 1e-7);
    CHECK(validate_connection(BaseMetric{3, 0.5, BaseKind::fubini_study}, -2.0).residual < 1e-7);

    const double z[2] = {0.3, -0.6};
    const auto plus = fs.connection(1.5, z);
    const auto minus = fs.connection(-1.5, z);
    for (std::size_t i = 0; i < plus.size(); ++i) CHECK(minus[i] == -plus[i]);
    // flat base, a = 1: eta = x dy - y dx
    const auto eta = flat.connection(1.0, z);
    CHECK(eta[0] == doctest::Approx(0.6));
    CHECK(eta[1] == doctest::Approx(0.3));
}

TEST_CASE("model metric construction") {
    ModelValidation v;
    const ModelMetric model = build_model_metric(linear_config(), &v);
    CHECK(v.min_eigenvalue > 0.0);
    CHECK(v.grad_tau < 1e-10);
    CHECK(v.closedness < 1e-7);
    CHECK(v.hermitian < 1e-12);
    CHECK(v.j_squared < 1e-14);

    // |grad t|^2 = g^{tt} = Q(1) = 2
    const Vec x = (Vec(4) << 1.0, 0.2, 0.1, -0.3).finished();
    const Mat g = model.metric_values(x);
    CHECK(g.inverse()(0, 0) == doctest::Approx(2.0).epsilon(1e-12));

    for (const Vec& p : sample_points(model, 20, 4)) {
        const Mat gp = model.metric_values(p);
        CHECK(gp(1, 1) == doctest::Approx(model.Q()(p(0))).epsilon(1e-14));
        CHECK(gp.determinant() > 0.0);
        for (bool opposite : {false, true}) {
            const Mat J = model.structure_values(p, opposite);
            const int d = model.dim();
            CHECK(max_abs(J * J + Mat::Identity(d, d)) < 1e-12);
        }
    }

    // a = -2 rescales the vertical block
    ModelConfig cfg = linear_config();
    cfg.a = Rational(-2);
    const ModelMetric scaled = build_model_metric(cfg);
    CHECK(scaled.metric_values(x)(1, 1) == doctest::Approx(model.Q()(1.0) / 4));
}

TEST_CASE("configuration rejection") {
    ModelConfig cfg = linear_config();
    cfg.tau_min = -0.5;
    CHECK_THROWS_AS(validate_config(cfg), ConfigurationError);
    cfg = linear_config();
    cfg.profile.m = 1;
    CHECK_THROWS_AS(validate_config(cfg), ConfigurationError);
    cfg = linear_config();
    cfg.s0 = 0.0;
    CHECK_THROWS_AS(validate_config(cfg), ConfigurationError);
    cfg = linear_config();
    cfg.a = Rational(0);
    CHECK_THROWS_AS(validate_config(cfg), ConfigurationError);
    cfg = linear_config();
    cfg.profile.c = Rational(1);  // interval (1/2, 2) contains c
    CHECK_THROWS_AS(validate_config(cfg), ConfigurationError);
    cfg = linear_config();
    cfg.profile.phi = -cfg.profile.phi;  // Q < 0
    CHECK_THROWS_AS(validate_config(cfg), ConfigurationError);
    CHECK_NOTHROW(validate_config(linear_config()));
}

TEST_CASE("laplacian and eigenstructure against the symbolic side") {
    for (const ModelConfig& cfg : {linear_config(), koiso_config(2), koiso_config(3)}) {
        const ModelMetric model(cfg);
        for (const Vec& x : sample_points(model, 6, 9)) {
            const PointGeometry geo = curvature_at(model, x);
            const SymbolicValues s = model.symbolic_at(x(0));
            CHECK(std::abs(geo.laplacian_tau - s.laplacian) < 1e-8 * std::abs(s.laplacian));
            const EigenReport r = skrp_eigen_check(model, x, geo);
            CHECK(r.hess_offblock < 1e-7);
            CHECK(r.ricci_offblock < 1e-7);
            CHECK(r.phi == doctest::Approx(s.phi).epsilon(1e-6));
            CHECK(r.psi == doctest::Approx(s.psi).epsilon(1e-6));
            CHECK(r.lambda_error < 1e-6);
            CHECK(r.mu_error < 1e-6);
            CHECK(r.Q_error < 1e-10);
        }
    }
}

TEST_CASE("residual identities and the perturbed negative control") {
    const ModelMetric good(koiso_config(2));
    const ModelMetric bad(koiso_config(2, true));
    const auto pts = sample_points(good, 8, 21);
    for (const Vec& x : pts) {
        const PointGeometry geo = curvature_at(good, x);
        const PointGeometry hat = conformal_curvature_at(good, x, 0.0);
        const ResidualSet r = residual_report(good, x, geo, hat);
        CHECK(r.ric_hes < 1e-6);
        CHECK(r.ricci_conformal < 1e-6);
        CHECK(r.hessian_inverse < 1e-8);
        REQUIRE(r.soliton);
        CHECK(*r.soliton < 1e-6);
        REQUIRE(r.f_tau);
        CHECK(*r.f_tau < 1e-6);

        const PointGeometry bgeo = curvature_at(bad, x);
        const PointGeometry bhat = conformal_curvature_at(bad, x, 0.0);
        const ResidualSet rb = residual_report(bad, x, bgeo, bhat);
        CHECK(*rb.soliton > 1e-3);
        CHECK(rb.hessian_inverse < 1e-8);
    }
}

TEST_CASE("conformal Ricci: jets against a finite-difference curvature") {
    const ModelMetric model(koiso_config(2));
    const Vec x = sample_points(model, 1, 2).front();
    auto hat_metric = [&](const double* y) {
        auto g = model.metric(y);
        const double s = 1.0 / (y[0] * y[0]);
        for (auto& v : g.a) v *= s;
        return g;
    };
    const Curvature fd = fd_curvature(hat_metric, x, 1e-4);
    const PointGeometry hat = conformal_curvature_at(model, x, 0.0);
    CHECK(max_abs(fd.ricci - hat.curvature.ricci) < 1e-4 * max_abs(hat.curvature.ricci));
}

TEST_CASE("Kaehler checks") {
    const ModelMetric model(koiso_config(2));
    for (const Vec& x : sample_points(model, 10, 13)) {
        const PointGeometry geo = curvature_at(model, x);
        const PointGeometry hat = conformal_curvature_at(model, x, model.c());
        const KahlerReport k = check_kahler(model, x, geo, hat);
        CHECK(k.nabla_J < 1e-6);
        CHECK(k.nabla_hat_Jbar < 1e-6);
        CHECK(k.nabla_hat_J > 1e-3);
        CHECK(k.closed_g < 1e-7);
        CHECK(k.closed_hat < 1e-7);
    }
}

TEST_CASE("hermitian defect") {
    const ModelMetric model(koiso_config(2));
    for (const Vec& x : sample_points(model, 5, 17)) {
        const Mat g = model.metric_values(x);
        CHECK(hermitian_defect(g, model.structure_values(x, false), g) < 1e-12);
        const PointResult p = evaluate_point(model, x, 0);
        REQUIRE(p.error.empty());
        CHECK(find_check(p.checks, "hermitian_affine_inverse").residual < 1e-6);
        CHECK(find_check(p.checks, "negative_hermitian_linear").residual > 1e-3);
    }
}

TEST_CASE("radius profile closed forms") {
    // Q = 2t^2, a = 1: log r = -1/(2t) + const
    const RadiusProfile quad([](double t) { return 2 * t * t; }, 1.0, 0.5, 2.0);
    CHECK(quad.node_residual() < 1e-9);
    CHECK(quad.strictly_monotone());
    const double ref = 1.25;
    for (double t : quad.nodes()) {
        const double expected = -1.0 / (2 * t) + 1.0 / (2 * ref);
        CHECK(std::abs(quad.log_r(t) - expected) < 1e-9);
        CHECK(std::abs(quad.r(t) / std::exp(expected) - 1) < 1e-9);
        CHECK(quad.tau_of_r(quad.r(t)) == doctest::Approx(t).epsilon(1e-10));
    }
    // Q = a t: r = K t
    const double a = 3.0;
    const RadiusProfile lin([a](double t) { return a * t; }, a, 0.5, 2.0);
    for (double t : lin.nodes()) CHECK(std::abs(lin.r(t) / (t / 1.25) - 1) < 1e-9);
    CHECK_THROWS_AS(lin.tau_of_r(1e6), std::out_of_range);

    // negative a reverses the direction
    const RadiusProfile neg([](double t) { return t; }, -1.0, 0.5, 2.0);
    CHECK(neg.r(0.6) > neg.r(1.9));

    CHECK_THROWS_AS(RadiusProfile([](double t) { return t - 1.0; }, 1.0, 0.5, 2.0), std::domain_error);

    const RadiusProfile from_config = radius_profile(koiso_config(2));
    CHECK(from_config.node_residual() < 1e-9);
    CHECK(from_config.strictly_monotone());
}

TEST_CASE("constancy of recovered c and kappa") {
    const ModelMetric lin(linear_config());
    const auto pts = evaluate_points(lin, sample_points(lin, 10, 7), Execution::serial);
    const ConstancyReport r = constants_constancy_check(lin, pts, 4.0);
    CHECK(r.c_spread < 1e-8);
    CHECK(r.c_error < 1e-6);
    CHECK(r.kappa_error < 1e-6);
    CHECK(std::abs(r.kappa_mean - 4.0) < 1e-6);

    // a wrong configured kappa is detected
    const ConstancyReport wrong = constants_constancy_check(lin, pts, 3.0);
    CHECK(wrong.kappa_error > 1e-3);
}

TEST_CASE("serial and parallel evaluation agree bit for bit") {
    const ModelMetric model(koiso_config(2));
    const auto pts = sample_points(model, 8, 5);
    CHECK(pts.size() == 8);
    const auto again = sample_points(model, 8, 5);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(pts[i] == again[i]);
    const auto s = evaluate_points(model, pts, Execution::serial);
    const auto p = evaluate_points(model, pts, Execution::parallel);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s[i].index == p[i].index);
        REQUIRE(s[i].checks.size() == p[i].checks.size());
        for (std::size_t k = 0; k < s[i].checks.size(); ++k) {
            CHECK(s[i].checks[k].name == p[i].checks[k].name);
            CHECK(s[i].checks[k].residual == p[i].checks[k].residual);
        }
    }
    std::ostringstream a, b;
    write_csv(a, s);
    write_csv(b, p);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("point_index,tau,check,residual,tolerance,pass\n", 0) == 0);
}

TEST_CASE("full suite on the Koiso configuration") {
    const GeometrySuite suite = run_geometry_suite(koiso_config(2));
    for (const auto& c : suite.checks) CHECK_MESSAGE(c.pass, c.name << " residual " << c.residual);
    CHECK(suite.pass());

    const GeometrySuite perturbed = run_geometry_suite(koiso_config(2, true));
    CHECK_FALSE(perturbed.pass());
    CHECK_FALSE(find_check(perturbed.checks, "soliton").pass);
    CHECK(find_check(perturbed.checks, "conformal_hessian_inverse").pass);
}
