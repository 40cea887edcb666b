#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "harness/config.hpp"
#include "json.hpp"

namespace softqed::harness {

struct CheckContext {
    std::uint64_t seed = 0;
    KinematicsRanges kinematics;
};

struct CheckOutcome {
    /// Compared against the tolerance: pass iff residual <= tolerance.
    double residual = 0.0;
    std::size_t samples = 0;
};

struct CheckDefinition {
    std::string name;
    /// Identity under test, in words.
    std::string tag;
    double default_tolerance = 0.0;
    std::function<CheckOutcome(const CheckContext&)> run;
};

/// Fixed order; this is the order of the report.
const std::vector<CheckDefinition>& check_registry();
std::vector<std::string> check_names();

struct CheckRecord {
    std::string name;
    std::string tag;
    std::uint64_t seed = 0;
    std::string inputs_digest;
    double residual = 0.0;
    double tolerance = 0.0;
    std::size_t samples = 0;
    bool pass = false;
    /// Set when the check threw instead of producing a residual.
    std::string error;
};

CheckRecord run_check(const SuiteConfig& config, const CheckDefinition& def);
/// Throws InvalidArgument for an unregistered name.
CheckRecord run_check(const SuiteConfig& config, std::string_view name);

/// Runs every registered check (concurrently) and returns records in registry order.
std::vector<CheckRecord> run_checks(const SuiteConfig& config);

/// Full verify report; `all_pass` receives the summary verdict.
nlohmann::ordered_json verify_report(const SuiteConfig& config, bool& all_pass);

}  // namespace softqed::harness
