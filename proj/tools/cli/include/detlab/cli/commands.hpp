#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "detlab/cli/config.hpp"
#include "detlab/cli/report.hpp"

namespace detlab::cli {

enum ExitCode : int { exit_ok = 0, exit_residual = 2, exit_spectrum = 3, exit_config = 4 };

struct CommandOptions {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<double> tolerance;
};

inline constexpr const char* verify_subjects[] = {"jost-pais", "ratio-1d", "thm-4-2",
                                                  "eq-4-37", "mode-identities", "hs-diagnostic"};
inline constexpr const char* scan_problems[] = {"halfline_N", "halfline_D", "disk_mode"};

// Build the report for a parsed config; `code` receives the exit class of
// the worst failure seen so far (rows are kept for the points that worked).
ReportTable build_verify_report(const std::string& subject, const RunConfig& cfg, int& code, std::ostream& log);
ReportTable build_scan_report(const std::string& problem, const RunConfig& cfg, int& code, std::ostream& log);
ReportTable build_modes_report(const RunConfig& cfg, int& code, std::ostream& log);

// Load, run, write; return the process exit code. Diagnostics go to `log`.
int cmd_verify(const std::string& subject, const CommandOptions& opts, std::ostream& log);
int cmd_scan(const std::string& problem, const CommandOptions& opts, std::ostream& log);
int cmd_modes(const CommandOptions& opts, std::ostream& log);

}  // namespace detlab::cli
