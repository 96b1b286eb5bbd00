#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "detlab/cli/config.hpp"
#include "detlab/numerics/identity.hpp"

namespace detlab::cli {

using Cell = std::variant<std::string, double, long long>;

// A rectangular table plus metadata. CSV puts the metadata on leading '#'
// lines; JSON nests it in a "metadata" object. Per-row extras (diagnostics,
// notes) are emitted in JSON only.
struct ReportTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::vector<std::pair<std::string, double>>> row_diagnostics;
  std::vector<std::vector<std::string>> row_notes;
};

// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_real(double x);

std::string render_csv(const ReportTable& t);
std::string render_json(const ReportTable& t);
std::string render(const ReportTable& t, ReportFormat f);

// Writes to a temporary file beside `path`, then renames it into place.
// Throws ConfigError when the directory does not exist or is not writable.
void write_atomic(const std::string& path, const std::string& content);

// identity, z_re, z_im, <side>_re, <side>_im..., abs_resid, rel_resid,
// converged. Side columns use the side names when every report has the same
// ones, and side1, side2, ... otherwise.
ReportTable identity_table(const std::vector<IdentityReport>& reports);

}  // namespace detlab::cli
