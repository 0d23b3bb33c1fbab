#include "skrp/cli/run_config.hpp"

#include <algorithm>
#include <cmath>

#include <CLI11.hpp>

namespace skrp::cli {

namespace {

Rational parse_rational(const std::string& key, const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& ex) {
        throw ConfigError("--" + key + ": " + ex.what());
    }
}

Mode parse_mode(const std::string& text) {
    if (text == "symbolic") return Mode::symbolic;
    if (text == "geometry") return Mode::geometry;
    if (text == "dual") return Mode::dual;
    if (text == "all") return Mode::all;
    throw ConfigError("--mode must be one of symbolic, geometry, dual, all (got '" + text + "')");
}

// Raw option values; rationals stay strings until parsed exactly.
struct RawOptions {
    std::string mode = "all";
    int m = 2;
    std::string a = "1", b = "1", c = "0", e = "1", kappa = "4", eps = "+1", s0 = "1";
    std::string A, B = "0", C = "1";
    std::string tau_min = "1/2", tau_max = "2";
    int samples = 20;
    std::uint64_t seed = 1;
    std::optional<double> tol;
    int sweep = 25;
    std::string perturb_A = "0";
    bool kappa_from_base = false;
    std::string out, csv;
};

}  // namespace

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::symbolic: return "symbolic";
        case Mode::geometry: return "geometry";
        case Mode::dual: return "dual";
        case Mode::all: return "all";
    }
    return "?";
}

std::string to_string(Command command) {
    switch (command) {
        case Command::verify: return "verify";
        case Command::family: return "family";
        case Command::profile_r: return "profile-r";
    }
    return "?";
}

nlohmann::json RunConfig::echo() const {
    nlohmann::json j;
    j["command"] = to_string(command);
    j["mode"] = to_string(mode);
    j["m"] = m;
    j["a"] = a.to_string();
    j["b"] = b.to_string();
    j["c"] = c.to_string();
    j["e"] = e.to_string();
    j["kappa"] = kappa.to_string();
    j["eps"] = odesys::to_string(eps);
    j["s0"] = s0.to_string();
    j["A"] = A ? nlohmann::json(A->to_string()) : nlohmann::json(nullptr);
    j["B"] = B.to_string();
    j["C"] = C.to_string();
    j["tau_min"] = tau_min.to_string();
    j["tau_max"] = tau_max.to_string();
    j["samples"] = samples;
    j["seed"] = seed;
    j["tol"] = tol ? nlohmann::json(*tol) : nlohmann::json(nullptr);
    j["sweep"] = sweep;
    j["perturb_A"] = perturb_A.to_string();
    j["kappa_from_base"] = kappa_from_base;
    return j;
}

void validate(const RunConfig& config) {
    if (config.m < 2) throw ConfigError("m must be >= 2 (got " + std::to_string(config.m) + ")");
    if (config.m > 6) throw ConfigError("m must be <= 6 (chart dimension is capped at 12)");
    if (config.a.is_zero()) throw ConfigError("a must be nonzero");
    if (config.s0.sign() <= 0) throw ConfigError("s0 must be positive");
    if (!(config.tau_min < config.tau_max)) throw ConfigError("tau-min must be below tau-max");
    if (config.samples < 1) throw ConfigError("samples must be >= 1");
    if (config.sweep < 0) throw ConfigError("sweep must be >= 0");
    if (config.tol && !(*config.tol > 0.0)) throw ConfigError("tol must be positive");
}

ParsedArguments parse_arguments(const std::vector<std::string>& args) {
    ParsedArguments out;
    RawOptions raw;

    CLI::App app{"Exact and numerical checks for special Kaehler-Ricci potentials and their solitons", "skrp"};
    auto* config_opt = app.set_config("--config", "", "flat key = value file; flags override it");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1, 1);
    app.fallthrough();

    app.add_option("--mode", raw.mode, "symbolic | geometry | dual | all");
    app.add_option("--m", raw.m, "complex dimension");
    app.add_option("--a", raw.a);
    app.add_option("--b", raw.b, "soliton function b/t");
    app.add_option("--c", raw.c);
    app.add_option("--e", raw.e, "soliton constant");
    app.add_option("--kappa", raw.kappa, "Einstein constant of the base");
    app.add_option("--eps", raw.eps, "+1 or -1");
    app.add_option("--s0", raw.s0, "scale of the base potential");
    app.add_option("--A", raw.A);
    app.add_option("--B", raw.B);
    app.add_option("--C", raw.C);
    app.add_option("--tau-min", raw.tau_min);
    app.add_option("--tau-max", raw.tau_max);
    app.add_option("--samples", raw.samples);
    app.add_option("--seed", raw.seed);
    app.add_option("--tol", raw.tol, "tolerance for AD against symbolic values");
    app.add_option("--sweep", raw.sweep, "randomized tuples in the symbolic suite");
    app.add_option("--perturb-A", raw.perturb_A, "added to A (negative control)");
    app.add_flag("--kappa-from-base", raw.kappa_from_base, "measure kappa from the base metric");
    app.add_option("--out", raw.out, "JSON report path");
    app.add_option("--csv", raw.csv, "CSV path");

    auto* verify = app.add_subcommand("verify", "run the checks");
    auto* family = app.add_subcommand("family", "print the Koiso family member");
    auto* profile_r = app.add_subcommand("profile-r", "radius table as CSV");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out.exit_code = 0;
        out.message = app.help();
        return out;
    } catch (const CLI::CallForAllHelp&) {
        out.exit_code = 0;
        out.message = app.help("", CLI::AppFormatMode::All);
        return out;
    } catch (const CLI::ParseError& ex) {
        out.exit_code = 2;
        out.message = ex.what();
        return out;
    }

    RunConfig& cfg = out.config;
    try {
        if (verify->parsed()) cfg.command = Command::verify;
        else if (family->parsed()) cfg.command = Command::family;
        else if (profile_r->parsed()) cfg.command = Command::profile_r;
        cfg.mode = parse_mode(raw.mode);
        cfg.m = raw.m;
        cfg.a = parse_rational("a", raw.a);
        cfg.b = parse_rational("b", raw.b);
        cfg.c = parse_rational("c", raw.c);
        cfg.e = parse_rational("e", raw.e);
        cfg.kappa = parse_rational("kappa", raw.kappa);
        try {
            cfg.eps = odesys::parse_sign(raw.eps);
        } catch (const std::exception& ex) {
            throw ConfigError(std::string("--eps: ") + ex.what());
        }
        cfg.s0 = parse_rational("s0", raw.s0);
        if (!raw.A.empty()) cfg.A = parse_rational("A", raw.A);
        cfg.B = parse_rational("B", raw.B);
        cfg.C = parse_rational("C", raw.C);
        cfg.tau_min = parse_rational("tau-min", raw.tau_min);
        cfg.tau_max = parse_rational("tau-max", raw.tau_max);
        cfg.samples = raw.samples;
        cfg.seed = raw.seed;
        cfg.tol = raw.tol;
        cfg.sweep = raw.sweep;
        cfg.perturb_A = parse_rational("perturb-A", raw.perturb_A);
        cfg.kappa_from_base = raw.kappa_from_base;
        if (config_opt->count() > 0) cfg.config_path = config_opt->as<std::string>();
        cfg.out_path = raw.out;
        cfg.csv_path = raw.csv;
        validate(cfg);
    } catch (const ConfigError& ex) {
        out.exit_code = 2;
        out.message = ex.what();
    }
    return out;
}

Rational rational_from_double(double x, long max_den) {
    if (!std::isfinite(x)) throw ConfigError("cannot convert a non-finite value to a rational");
    // convergents h/k of the continued fraction of |x|
    const bool negative = x < 0;
    double r = std::abs(x);
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int i = 0; i < 64; ++i) {
        const double a = std::floor(r);
        if (a > 1e15) break;
        const long ai = static_cast<long>(a);
        const long h2 = ai * h1 + h0;
        const long k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1, h1 = h2, k0 = k1, k1 = k2;
        const double frac = r - a;
        if (frac < 1e-12) break;
        r = 1.0 / frac;
    }
    if (k1 == 0) throw ConfigError("value too large for a rational approximation");
    return Rational(negative ? -h1 : h1, k1);
}

}  // namespace skrp::cli
