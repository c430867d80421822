#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace pnlie::cli {

inline constexpr const char* kReportSchema = "pnlie-report/1";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kPass = 0, kMathFail = 1, kUsage = 2, kBudget = 3 };

/// Runs one command line (args excludes the program name). The JSON report
/// goes to `out`, the human summary and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Report with the "runtime" member (thread count, wall time) removed; equal
/// for equal argv and seed whatever the thread count.
nlohmann::ordered_json report_body(const nlohmann::ordered_json& report);

}  // namespace pnlie::cli
