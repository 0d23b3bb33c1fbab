// skrp: command-line front end. Exit codes: 0 all checks pass, 1 a check
// failed, 2 configuration or parse error.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "skrp/cli/suites.hpp"

namespace {

int verify(const skrp::cli::RunConfig& cfg) {
    std::ofstream csv;
    if (!cfg.csv_path.empty()) {
        csv.open(cfg.csv_path);
        if (!csv) throw skrp::cli::ConfigError("cannot open " + cfg.csv_path);
    }
    const auto start = std::chrono::steady_clock::now();
    const auto report = skrp::cli::run_verify(cfg, csv.is_open() ? &csv : nullptr);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string text = report.to_json().dump(2) + "\n";
    if (cfg.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.out_path);
        if (!out) throw skrp::cli::ConfigError("cannot open " + cfg.out_path);
        out << text;
    }
    for (const auto& c : report.checks) {
        if (!c.pass) std::cerr << "FAIL " << c.name << ": " << c.detail << "\n";
    }
    std::cerr << report.passed() << " passed, " << report.failed() << " failed, " << report.skipped.size()
              << " skipped in " << seconds << " s\n";
    return report.pass() ? 0 : 1;
}

int family(const skrp::cli::RunConfig& cfg) {
    try {
        std::cout << skrp::cli::emit_family(cfg);
        return 0;
    } catch (const skrp::solutions::ProfileError& ex) {
        std::cerr << ex.what() << "\n";
        return 1;
    }
}

int profile_r(const skrp::cli::RunConfig& cfg) {
    std::ostringstream table;
    const bool ok = skrp::cli::write_radius_table(cfg, table);
    if (cfg.csv_path.empty()) {
        std::cout << table.str();
    } else {
        std::ofstream out(cfg.csv_path);
        if (!out) throw skrp::cli::ConfigError("cannot open " + cfg.csv_path);
        out << table.str();
    }
    if (!ok) std::cerr << "radius profile failed its node residual or monotonicity check\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    const auto parsed = skrp::cli::parse_arguments(std::vector<std::string>(argv + 1, argv + argc));
    if (parsed.exit_code) {
        (*parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message << "\n";
        return *parsed.exit_code;
    }
    const auto& cfg = parsed.config;
    try {
        switch (cfg.command) {
            case skrp::cli::Command::verify: return verify(cfg);
            case skrp::cli::Command::family: return family(cfg);
            case skrp::cli::Command::profile_r: return profile_r(cfg);
        }
    } catch (const skrp::cli::ConfigError& ex) {
        std::cerr << "configuration error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}
