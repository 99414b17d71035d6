#ifndef OPTOPHASE_CHECK_HPP
#define OPTOPHASE_CHECK_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "optophase/sweep.hpp"

namespace optophase {

/// Outcome of one oracle-vs-closed-form suite. A suite passes when
/// deviation <= tolerance; a NaN deviation always fails.
struct SuiteReport {
    std::string name;
    std::string description;
    double tolerance = 0.0;
    double deviation = 0.0;
    bool passed = false;
    std::string detail;
};

struct CheckOptions {
    std::uint64_t seed = kDefaultSeed;
    std::optional<double> tolerance;          // replaces every suite tolerance
    std::optional<std::string> only_suite;
};

struct SuiteInfo {
    std::string name;
    std::string description;
};

std::vector<SuiteInfo> check_suites();

/// Throws std::invalid_argument for an unknown suite name.
std::vector<SuiteReport> run_checks(const CheckOptions& options);

nlohmann::ordered_json check_report_json(const std::vector<SuiteReport>& reports, const CheckOptions& options);

}  // namespace optophase

#endif  // OPTOPHASE_CHECK_HPP
