#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "detlab/disk/radial_potential.hpp"
#include "detlab/halfline/potential.hpp"
#include "detlab/numerics/discretization.hpp"
#include "detlab/verify/eigen_scan.hpp"

namespace detlab::cli {

// Malformed or out-of-range configuration. `field` is a JSON pointer, `line`
// is 1-based (0 when unknown).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string field = {}, std::size_t line = 0);
  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

enum class PotentialKind { exp1d, well1d, table1d, radial_gaussian, radial_table };
enum class ReportFormat { csv, json };

struct PotentialSpec {
  PotentialKind kind = PotentialKind::exp1d;
  double amplitude = 0.0;
  double rate = 1.0;
  double depth = 0.0;
  double width = 1.0;
  double R = 1.0;
  std::string path;  // resolved against the config's directory
};

bool is_radial(PotentialKind k) noexcept;
const char* to_string(PotentialKind k) noexcept;

struct ScanSettings {
  ScanRange range{};
  int ell = 0;
  Boundary bc = Boundary::neumann;
};

struct HsSettings {
  int levels = 4;
  int ell = 0;
  Boundary bc = Boundary::dirichlet;
};

struct RunConfig {
  PotentialSpec potential;
  std::vector<cplx> z_list;
  Discretization discretization;
  std::string output_path;
  ReportFormat format = ReportFormat::csv;
  ScanSettings scan;
  HsSettings hs;
  std::size_t threads = 1;
};

// base_dir resolves relative table paths.
RunConfig parse_config(const std::string& text, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);

void validate_tolerance(double tol, const std::string& field);

Potential1D make_potential_1d(const RunConfig& cfg);
RadialPotential2D make_potential_2d(const RunConfig& cfg);

// Human-readable statement of how tables are extended beyond their samples.
std::string table_extension_note(const RunConfig& cfg);

}  // namespace detlab::cli
