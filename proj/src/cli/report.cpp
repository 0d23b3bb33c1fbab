#include "skrp/cli/report.hpp"

#include <algorithm>

#ifndef SKRP_VERSION
#define SKRP_VERSION "0.0.0"
#endif

namespace skrp::cli {

const char* version() { return SKRP_VERSION; }

nlohmann::json CheckEntry::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["parameters"] = parameters;
    j["kind"] = exact ? "exact" : "numeric";
    if (exact) {
        j["exact"] = pass;
    } else {
        j["residual"] = residual ? nlohmann::json(*residual) : nlohmann::json(nullptr);
        j["tolerance"] = tolerance ? nlohmann::json(*tolerance) : nlohmann::json(nullptr);
        j["bound"] = lower_bound ? "lower" : "upper";
    }
    j["pass"] = pass;
    j["detail"] = detail;
    return j;
}

int Report::passed() const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass; }));
}

int Report::failed() const { return static_cast<int>(checks.size()) - passed(); }

bool Report::pass() const { return !checks.empty() && failed() == 0; }

void Report::append(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    skipped.insert(skipped.end(), other.skipped.begin(), other.skipped.end());
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["tool"] = "skrp";
    j["version"] = version();
    j["mode"] = mode;
    j["config"] = config;
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : checks) list.push_back(c.to_json());
    j["checks"] = list;
    nlohmann::json skip = nlohmann::json::array();
    for (const auto& s : skipped) skip.push_back({{"name", s.name}, {"reason", s.reason}});
    j["skipped"] = skip;
    j["summary"] = {{"total", checks.size()}, {"passed", passed()}, {"failed", failed()},
                    {"skipped", skipped.size()}, {"pass", pass()}};
    return j;
}

CheckEntry exact_check(std::string name, bool pass, std::string detail, nlohmann::json parameters) {
    CheckEntry c;
    c.name = std::move(name);
    c.parameters = std::move(parameters);
    c.exact = true;
    c.pass = pass;
    c.detail = std::move(detail);
    return c;
}

CheckEntry numeric_check(std::string name, double residual, double tolerance, bool lower_bound, std::string detail,
                         nlohmann::json parameters) {
    CheckEntry c;
    c.name = std::move(name);
    c.parameters = std::move(parameters);
    c.exact = false;
    c.residual = residual;
    c.tolerance = tolerance;
    c.lower_bound = lower_bound;
    c.pass = lower_bound ? residual > tolerance : residual <= tolerance;
    c.detail = std::move(detail);
    return c;
}

}  // namespace skrp::cli
