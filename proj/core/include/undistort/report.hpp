#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "undistort/scenario.hpp"

namespace undistort {

inline constexpr std::string_view kReportSchema = "undistort-report/1";

struct RunOptions {
  // Overrides the scenario's [run] values when set.
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> budget;
  // Echoed in the header.
  std::string scenario_name;
};

struct ReportTable {
  std::string file;  // e.g. "shear_g.csv"
  std::string csv;
};

struct Report {
  std::string text;
  std::vector<ReportTable> tables;
};

// Runs the analyses in declaration order. Precondition failures propagate as
// PreconditionError; node caps are flagged inside the report.
Report run_scenario(const Scenario& scenario, const RunOptions& options = {});

}  // namespace undistort
