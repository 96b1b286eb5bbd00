#include "detlab/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>

#include "detlab/disk/assembly.hpp"
#include "detlab/halfline/spectral_point.hpp"
#include "detlab/numerics/errors.hpp"
#include "detlab/verify/identities.hpp"

namespace detlab::cli {

namespace {

constexpr const char* tool_version = "detlab 0.1.0";

int severity(int code) {
  switch (code) {
    case exit_config: return 3;
    case exit_spectrum: return 2;
    case exit_residual: return 1;
    default: return 0;
  }
}

void raise(int& code, int c) {
  if (severity(c) > severity(code)) code = c;
}

int classify(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::singularity:
    case ErrorKind::pole:
    case ErrorKind::spectrum_proximity: return exit_spectrum;
    case ErrorKind::parameter:
    case ErrorKind::domain:
    case ErrorKind::truncation:
    case ErrorKind::mode_range: return exit_config;
    default: return exit_residual;
  }
}

std::string z_text(cplx z) { return "(" + format_real(z.real()) + ", " + format_real(z.imag()) + ")"; }

// Runs one unit of work; numerical errors become a failure note and an exit
// class, configuration errors propagate.
bool guarded(ReportTable& t, int& code, std::ostream& log, const std::string& what, const std::function<void()>& fn) {
  try {
    fn();
    return true;
  } catch (const Error& e) {
    const int c = classify(e);
    if (c == exit_config) throw ConfigError(what + ": " + e.what());
    raise(code, c);
    t.metadata.emplace_back("failure", what + ": " + e.what());
    log << "detlab: " << what << ": " << e.what() << "\n";
    return false;
  }
}

void common_metadata(ReportTable& t, const RunConfig& cfg, const std::string& command, const std::string& potential) {
  const Discretization& d = cfg.discretization;
  std::vector<std::pair<std::string, std::string>> m = {
      {"tool", tool_version},
      {"command", command},
      {"potential", potential},
      {"table_extension", table_extension_note(cfg)},
      {"x_max", format_real(d.x_max)},
      {"n_panels", std::to_string(d.n_panels)},
      {"nodes_per_panel", std::to_string(d.nodes_per_panel)},
      {"l_max", std::to_string(d.l_max)},
      {"tolerance", format_real(d.tolerance)},
      {"max_refinements", std::to_string(d.max_refinements)},
  };
  t.metadata.insert(t.metadata.begin(), m.begin(), m.end());
}

void require_z(const RunConfig& cfg) {
  if (cfg.z_list.empty()) throw ConfigError("z_list is empty", "/z_list");
}

bool known(const std::string& s, const auto& list) {
  return std::find_if(std::begin(list), std::end(list), [&](const char* x) { return s == x; }) != std::end(list);
}

RunConfig load_with_overrides(const CommandOptions& opts) {
  RunConfig cfg = load_config(opts.config_path);
  if (opts.tolerance) {
    validate_tolerance(*opts.tolerance, "--tolerance");
    cfg.discretization.tolerance = *opts.tolerance;
  }
  if (opts.out) cfg.output_path = *opts.out;
  if (cfg.output_path.empty()) throw ConfigError("no output path: set output.path or pass --out", "/output/path");
  return cfg;
}

void report_config_error(const ConfigError& e, const std::string& config_path, std::ostream& log) {
  log << "detlab: config error";
  if (!config_path.empty()) log << " in " << config_path;
  if (e.line()) log << ", line " << e.line();
  if (!e.field().empty()) log << ", field " << e.field();
  log << ": " << e.what() << "\n";
}

template <class Build>
int run_command(const CommandOptions& opts, std::ostream& log, Build build) {
  try {
    const RunConfig cfg = load_with_overrides(opts);
    int code = exit_ok;
    const ReportTable t = build(cfg, code);
    write_atomic(cfg.output_path, render(t, cfg.format));
    return code;
  } catch (const ConfigError& e) {
    report_config_error(e, opts.config_path, log);
    return exit_config;
  } catch (const Error& e) {
    log << "detlab: " << e.what() << "\n";
    return classify(e);
  }
}

}  // namespace

ReportTable build_verify_report(const std::string& subject, const RunConfig& cfg, int& code, std::ostream& log) {
  if (!known(subject, verify_subjects)) throw ConfigError("unknown verify subject '" + subject + "'");
  require_z(cfg);
  const Discretization& disc = cfg.discretization;
  const bool radial = subject == "thm-4-2" || subject == "eq-4-37" || subject == "mode-identities" ||
                      (subject == "hs-diagnostic" && is_radial(cfg.potential.kind));
  std::vector<IdentityReport> reports;
  ReportTable failures;
  std::string description;
  if (radial) {
    const RadialPotential2D V = make_potential_2d(cfg);
    description = V.description;
    const DiskVerifyOptions dopts{cfg.threads, 0};
    for (cplx z : cfg.z_list) {
      const SpectralPoint pt = sqrt_principal(z);
      guarded(failures, code, log, subject + " at z = " + z_text(z), [&] {
        if (subject == "thm-4-2") {
          reports.push_back(verify_theorem_4_2(V, pt, disc, dopts));
        } else if (subject == "eq-4-37") {
          reports.push_back(verify_eq_4_37(V, pt, disc, dopts));
        } else if (subject == "mode-identities") {
          for (auto& r : verify_mode_identities(V, pt, disc, dopts)) reports.push_back(std::move(r));
        } else {
          reports.push_back(verify_hs_membership(V, cfg.hs.ell, pt, cfg.hs.bc, cfg.hs.levels, disc));
        }
      });
    }
  } else {
    if (subject == "thm-4-2" || subject == "eq-4-37" || subject == "mode-identities")
      throw ConfigError("verify " + subject + " needs a radial potential", "/potential/type");
    const Potential1D V = make_potential_1d(cfg);
    description = V.description;
    for (cplx z : cfg.z_list) {
      const SpectralPoint pt = sqrt_principal(z);
      if (subject == "jost-pais") {
        for (Boundary bc : {Boundary::dirichlet, Boundary::neumann})
          guarded(failures, code, log, subject + " " + std::string(to_string(bc)) + " at z = " + z_text(z),
                  [&] { reports.push_back(verify_jost_pais(V, pt, bc, disc)); });
      } else if (subject == "ratio-1d") {
        guarded(failures, code, log, subject + " at z = " + z_text(z),
                [&] { reports.push_back(verify_ratio_1d(V, pt, disc)); });
      } else {
        guarded(failures, code, log, subject + " at z = " + z_text(z),
                [&] { reports.push_back(verify_hs_membership(V, pt, cfg.hs.bc, cfg.hs.levels, disc)); });
      }
    }
  }

  ReportTable t = identity_table(reports);
  common_metadata(t, cfg, "verify " + subject, description);
  t.metadata.insert(t.metadata.end(), failures.metadata.begin(), failures.metadata.end());
  for (const auto& r : reports)
    if (!r.converged) raise(code, exit_residual);
  return t;
}

ReportTable build_scan_report(const std::string& problem, const RunConfig& cfg, int& code, std::ostream& log) {
  if (!known(problem, scan_problems)) throw ConfigError("unknown scan problem '" + problem + "'");
  const Discretization& disc = cfg.discretization;
  ReportTable t;
  t.columns = {"bc", "z_root", "det_residual", "oracle_z", "mismatch"};
  std::string description;
  EigenScanResult res;
  bool ok = false;
  if (problem == "disk_mode") {
    const RadialPotential2D V = make_potential_2d(cfg);
    description = V.description;
    ok = guarded(t, code, log, "scan " + problem,
                 [&] { res = eigenvalue_scan(V, cfg.scan.ell, cfg.scan.bc, cfg.scan.range, disc); });
  } else {
    const Potential1D V = make_potential_1d(cfg);
    description = V.description;
    const ScanProblem p = problem == "halfline_N" ? ScanProblem::halfline_neumann : ScanProblem::halfline_dirichlet;
    ok = guarded(t, code, log, "scan " + problem, [&] { res = eigenvalue_scan(V, p, cfg.scan.range, disc); });
  }
  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("scan_range", "[" + format_real(cfg.scan.range.z_lo) + ", " + format_real(cfg.scan.range.z_hi) + "]");
  meta.emplace_back("n_samples", std::to_string(cfg.scan.range.n_samples));
  if (problem == "disk_mode") meta.emplace_back("ell", std::to_string(cfg.scan.ell));
  if (ok) {
    const std::vector<double> oracle = nearest_oracle(res);
    for (std::size_t i = 0; i < res.roots.size(); ++i) {
      const double mismatch = std::abs(res.roots[i] - oracle[i]);
      t.rows.push_back({std::string(to_string(res.bc)), res.roots[i], res.root_residuals[i], oracle[i], mismatch});
      if (!(mismatch <= disc.tolerance)) raise(code, exit_residual);
    }
    std::string oracle_list;
    for (std::size_t i = 0; i < res.oracle_values.size(); ++i)
      oracle_list += (i ? " " : "") + format_real(res.oracle_values[i]);
    meta.emplace_back("oracle_eigenvalues", oracle_list.empty() ? "none" : oracle_list);
    std::string poles;
    for (std::size_t i = 0; i < res.rejected_poles.size(); ++i)
      poles += (i ? " " : "") + format_real(res.rejected_poles[i]);
    meta.emplace_back("rejected_poles", poles.empty() ? "none" : poles);
    meta.emplace_back("ill_conditioned", res.ill_conditioned ? "1" : "0");
    for (const auto& n : res.notes) meta.emplace_back("note", n);
    if (res.roots.size() != res.oracle_values.size()) {
      meta.emplace_back("count_mismatch", std::to_string(res.roots.size()) + " roots vs " +
                                              std::to_string(res.oracle_values.size()) + " oracle eigenvalues");
      raise(code, exit_residual);
    }
  }
  t.metadata.insert(t.metadata.begin(), meta.begin(), meta.end());
  common_metadata(t, cfg, "scan " + problem, description);
  return t;
}

ReportTable build_modes_report(const RunConfig& cfg, int& code, std::ostream& log) {
  require_z(cfg);
  const RadialPotential2D V = make_potential_2d(cfg);
  const cplx z = cfg.z_list.front();
  ReportTable t;
  t.columns = {"ell", "m0_re", "m0_im", "m_re", "m_im", "d_re", "d_im", "b_re", "b_im", "tau_re", "tau_im",
               "abs_d_minus_1"};
  const int l_max = cfg.discretization.l_max;
  guarded(t, code, log, "modes at z = " + z_text(z), [&] {
    const DiskModeSolver solver(V, sqrt_principal(z), cfg.discretization);
    const std::vector<ModeData> modes =
        map_modes<ModeData>(l_max, cfg.threads, [&](int l) { return solver.mode_data(l); });
    for (int l = -l_max; l <= l_max; ++l) {
      const ModeData& m = modes[static_cast<std::size_t>(std::abs(l))];
      t.rows.push_back({static_cast<long long>(l), m.m0.real(), m.m0.imag(), m.m.real(), m.m.imag(), m.d.real(),
                        m.d.imag(), m.b.real(), m.b.imag(), m.tau.real(), m.tau.imag(), std::abs(m.d - 1.0)});
    }
  });
  t.metadata.insert(t.metadata.begin(), {"z", z_text(z)});
  if (cfg.z_list.size() > 1) t.metadata.insert(t.metadata.begin() + 1, {"note", "only the first z_list entry is used"});
  common_metadata(t, cfg, "modes", V.description);
  return t;
}

int cmd_verify(const std::string& subject, const CommandOptions& opts, std::ostream& log) {
  return run_command(opts, log, [&](const RunConfig& cfg, int& code) { return build_verify_report(subject, cfg, code, log); });
}

int cmd_scan(const std::string& problem, const CommandOptions& opts, std::ostream& log) {
  return run_command(opts, log, [&](const RunConfig& cfg, int& code) { return build_scan_report(problem, cfg, code, log); });
}

int cmd_modes(const CommandOptions& opts, std::ostream& log) {
  return run_command(opts, log, [&](const RunConfig& cfg, int& code) { return build_modes_report(cfg, code, log); });
}

}  // namespace detlab::cli
