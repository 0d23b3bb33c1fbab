#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace skrp::cli {

/// One verified statement. Exact checks carry a pass flag only; numerical
/// checks carry a residual and the tolerance it was held to.
struct CheckEntry {
    std::string name;
    nlohmann::json parameters = nlohmann::json::object();
    bool exact = true;
    std::optional<double> residual;
    std::optional<double> tolerance;
    bool lower_bound = false;  // negative control: passes when residual > tolerance
    bool pass = false;
    std::string detail;

    nlohmann::json to_json() const;
};

struct Skipped {
    std::string name;
    std::string reason;
};

struct Report {
    std::string mode;
    nlohmann::json config = nlohmann::json::object();
    std::vector<CheckEntry> checks;
    std::vector<Skipped> skipped;

    int passed() const;
    int failed() const;
    /// At least one check ran and none failed.
    bool pass() const;
    void append(const Report& other);
    nlohmann::json to_json() const;
};

CheckEntry exact_check(std::string name, bool pass, std::string detail = {},
                       nlohmann::json parameters = nlohmann::json::object());
CheckEntry numeric_check(std::string name, double residual, double tolerance, bool lower_bound = false,
                         std::string detail = {}, nlohmann::json parameters = nlohmann::json::object());

const char* version();

}  // namespace skrp::cli
