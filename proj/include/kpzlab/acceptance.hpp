#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace kpz {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    bool monte_carlo = false;
    double runtime_limit_s = 0.0;
    double seconds = 0.0;
    nlohmann::json measured;
    std::string detail;
};

struct AcceptanceOptions {
    std::uint64_t seed = 20240521;
    bool skip_mc = false;
    std::vector<int> only;  // empty: all
};

inline constexpr int kCriterionCount = 9;

/// Runs criterion `id` (1..9).  Exceptions from the library are caught and
/// reported as a failure with the message in `detail`.
CriterionResult run_criterion(int id, std::uint64_t seed);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// Report body without wall-clock fields, so equal seeds give equal output.
nlohmann::json acceptance_report(const std::vector<CriterionResult>& results, std::uint64_t seed);

/// One line per criterion: "PASS|FAIL <id> <name> (<seconds>s) <detail>".
std::string summary_line(const CriterionResult& r);

}  // namespace kpz
