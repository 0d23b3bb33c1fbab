#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "skrp/odesys/linear_ode.hpp"
#include "skrp/ratcalc/rational.hpp"

namespace skrp::cli {

using ratcalc::Rational;

/// Bad flags, unparseable rationals, or parameters outside their domain. Exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Command { verify, family, profile_r };
enum class Mode { symbolic, geometry, dual, all };

struct RunConfig {
    Command command = Command::verify;
    Mode mode = Mode::all;

    int m = 2;
    Rational a{1};
    Rational b{1};
    Rational c{0};
    Rational e{1};
    Rational kappa{4};
    odesys::Sign eps = odesys::Sign::plus;
    Rational s0{1};
    std::optional<Rational> A;  // checked against the derived A when given
    Rational B{0};
    Rational C{1};
    Rational tau_min{1, 2};
    Rational tau_max{2};

    int samples = 20;
    std::uint64_t seed = 1;
    std::optional<double> tol;  // overrides the AD-vs-symbolic tolerance
    int sweep = 25;
    Rational perturb_A{0};
    bool kappa_from_base = false;

    std::string config_path;
    std::string out_path;
    std::string csv_path;

    nlohmann::json echo() const;
};

std::string to_string(Mode mode);
std::string to_string(Command command);

/// Result of command-line parsing. When exit_code is set the caller prints
/// `message` (help text on 0, a diagnostic on 2) and stops.
struct ParsedArguments {
    RunConfig config;
    std::optional<int> exit_code;
    std::string message;
};

/// Arguments exclude the program name. Flags override values read from --config.
ParsedArguments parse_arguments(const std::vector<std::string>& args);

/// Range checks shared by all commands; throws ConfigError.
void validate(const RunConfig& config);

/// Nearest rational with denominator at most max_den, by continued fractions.
Rational rational_from_double(double x, long max_den = 1000000);

}  // namespace skrp::cli
