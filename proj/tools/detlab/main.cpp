#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "detlab/cli/commands.hpp"

namespace {

void add_common(CLI::App* cmd, detlab::cli::CommandOptions& opts, std::string& out, double& tol) {
  cmd->add_option("--config", opts.config_path, "JSON run configuration")->required();
  cmd->add_option("--out", out, "report path (overrides output.path)");
  cmd->add_option("--tolerance", tol, "identity tolerance in [1e-12, 1e-2]");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace detlab::cli;
  CLI::App app{"Fredholm determinant identities for Schrodinger operators on the half-line and the disk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "detlab 0.1.0");

  CommandOptions opts;
  std::string out;
  double tol = -1.0;
  std::string subject, problem;

  std::vector<std::string> subjects(std::begin(verify_subjects), std::end(verify_subjects));
  std::vector<std::string> problems(std::begin(scan_problems), std::end(scan_problems));

  CLI::App* verify = app.add_subcommand("verify", "check an identity at every z of the config");
  verify->add_option("subject", subject, "identity to verify")->required()->check(CLI::IsMember(subjects));
  add_common(verify, opts, out, tol);

  CLI::App* scan = app.add_subcommand("scan", "locate eigenvalues as determinant zeros");
  scan->add_option("problem", problem, "determinant to scan")->required()->check(CLI::IsMember(problems));
  add_common(scan, opts, out, tol);

  CLI::App* modes = app.add_subcommand("modes", "dump per-mode disk data at the first z");
  add_common(modes, opts, out, tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  if (!out.empty()) opts.out = out;
  if (tol >= 0.0) opts.tolerance = tol;

  try {
    if (verify->parsed()) return cmd_verify(subject, opts, std::cerr);
    if (scan->parsed()) return cmd_scan(problem, opts, std::cerr);
    return cmd_modes(opts, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "detlab: " << e.what() << "\n";
    return 1;
  }
}
