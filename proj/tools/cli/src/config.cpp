#include "detlab/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "detlab/disk/radial_solution.hpp"
#include "detlab/halfline/spectral_point.hpp"
#include "detlab/numerics/errors.hpp"
#include "json.hpp"

namespace detlab::cli {

using nlohmann::json;

ConfigError::ConfigError(const std::string& what, std::string field, std::size_t line)
    : std::runtime_error(what), field_(std::move(field)), line_(line) {}

bool is_radial(PotentialKind k) noexcept {
  return k == PotentialKind::radial_gaussian || k == PotentialKind::radial_table;
}

const char* to_string(PotentialKind k) noexcept {
  switch (k) {
    case PotentialKind::exp1d: return "exp1d";
    case PotentialKind::well1d: return "well1d";
    case PotentialKind::table1d: return "table1d";
    case PotentialKind::radial_gaussian: return "radial_gaussian";
    case PotentialKind::radial_table: return "radial_table";
  }
  return "unknown";
}

void validate_tolerance(double tol, const std::string& field) {
  if (!(tol >= 1e-12 && tol <= 1e-2)) throw ConfigError("tolerance must lie in [1e-12, 1e-2]", field);
}

namespace {

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

// Walks the document and remembers where each key first appears, so field
// errors can point at a line.
class Reader {
 public:
  Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& msg) const {
    throw ConfigError(msg, pointer, line_for(pointer));
  }

  std::size_t line_for(const std::string& pointer) const {
    const auto slash = pointer.find_last_of('/');
    if (slash == std::string::npos || slash + 1 >= pointer.size()) return 0;
    std::string key = pointer.substr(slash + 1);
    if (!key.empty() && std::isdigit(static_cast<unsigned char>(key[0]))) {
      // array element: point at the parent key
      return line_for(pointer.substr(0, slash));
    }
    // search after the parent's key to disambiguate repeated names
    std::size_t from = 0;
    const std::string parent = pointer.substr(0, slash);
    if (!parent.empty()) {
      const auto ps = parent.find_last_of('/');
      const std::string pkey = "\"" + parent.substr(ps + 1) + "\"";
      const auto at = text_.find(pkey);
      if (at != std::string::npos) from = at;
    }
    const auto pos = text_.find("\"" + key + "\"", from);
    return pos == std::string::npos ? 0 : line_of_offset(text_, pos);
  }

  void allow_keys(const json& obj, const std::string& pointer, std::initializer_list<const char*> keys) const {
    if (!obj.is_object()) fail(pointer, "expected an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (!allowed.count(it.key())) fail(pointer + "/" + it.key(), "unknown field '" + it.key() + "'");
  }

  double number(const json& obj, const std::string& pointer, const char* key) const {
    const std::string p = pointer + "/" + key;
    if (!obj.contains(key)) fail(p, std::string("missing field '") + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number()) fail(p, std::string("field '") + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(p, std::string("field '") + key + "' must be finite");
    return d;
  }

  double number_or(const json& obj, const std::string& pointer, const char* key, double fallback) const {
    return obj.contains(key) ? number(obj, pointer, key) : fallback;
  }

  int integer_or(const json& obj, const std::string& pointer, const char* key, int fallback, int lo, int hi) const {
    if (!obj.contains(key)) return fallback;
    const std::string p = pointer + "/" + key;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(p, std::string("field '") + key + "' must be an integer");
    const long long x = v.get<long long>();
    if (x < lo || x > hi)
      fail(p, std::string("field '") + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(x);
  }

  std::string string(const json& obj, const std::string& pointer, const char* key) const {
    const std::string p = pointer + "/" + key;
    if (!obj.contains(key)) fail(p, std::string("missing field '") + key + "'");
    if (!obj.at(key).is_string()) fail(p, std::string("field '") + key + "' must be a string");
    return obj.at(key).get<std::string>();
  }

  Boundary boundary_or(const json& obj, const std::string& pointer, const char* key, Boundary fallback) const {
    if (!obj.contains(key)) return fallback;
    const std::string s = string(obj, pointer, key);
    if (s == "dirichlet" || s == "D") return Boundary::dirichlet;
    if (s == "neumann" || s == "N") return Boundary::neumann;
    fail(pointer + "/" + key, "boundary must be 'dirichlet' or 'neumann'");
  }

 private:
  const std::string& text_;
};

void positive(const Reader& rd, double v, const std::string& pointer) {
  if (!(v > 0.0)) rd.fail(pointer, "must be positive");
}

PotentialSpec read_potential(const Reader& rd, const json& p, const std::string& base_dir) {
  const std::string ptr = "/potential";
  if (!p.is_object()) rd.fail(ptr, "potential must be an object");
  const std::string type = rd.string(p, ptr, "type");
  PotentialSpec s;
  auto resolve = [&](const std::string& path) {
    std::filesystem::path fp(path);
    if (fp.is_relative()) fp = std::filesystem::path(base_dir) / fp;
    return fp.lexically_normal().string();
  };
  if (type == "exp1d") {
    rd.allow_keys(p, ptr, {"type", "amplitude", "rate"});
    s.kind = PotentialKind::exp1d;
    s.amplitude = rd.number(p, ptr, "amplitude");
    s.rate = rd.number(p, ptr, "rate");
    positive(rd, s.rate, ptr + "/rate");
  } else if (type == "well1d") {
    rd.allow_keys(p, ptr, {"type", "depth", "width"});
    s.kind = PotentialKind::well1d;
    s.depth = rd.number(p, ptr, "depth");
    s.width = rd.number(p, ptr, "width");
    positive(rd, s.width, ptr + "/width");
  } else if (type == "table1d") {
    rd.allow_keys(p, ptr, {"type", "path"});
    s.kind = PotentialKind::table1d;
    s.path = resolve(rd.string(p, ptr, "path"));
  } else if (type == "radial_gaussian") {
    rd.allow_keys(p, ptr, {"type", "amplitude", "width", "R"});
    s.kind = PotentialKind::radial_gaussian;
    s.amplitude = rd.number(p, ptr, "amplitude");
    s.width = rd.number(p, ptr, "width");
    s.R = rd.number(p, ptr, "R");
    positive(rd, s.width, ptr + "/width");
    positive(rd, s.R, ptr + "/R");
  } else if (type == "radial_table") {
    rd.allow_keys(p, ptr, {"type", "path", "R"});
    s.kind = PotentialKind::radial_table;
    s.path = resolve(rd.string(p, ptr, "path"));
    s.R = rd.number(p, ptr, "R");
    positive(rd, s.R, ptr + "/R");
  } else {
    rd.fail(ptr + "/type", "unknown potential type '" + type + "'");
  }
  return s;
}

cplx read_z(const Reader& rd, const json& v, const std::string& ptr) {
  cplx z;
  if (v.is_number()) {
    z = {v.get<double>(), 0.0};
  } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    z = {v[0].get<double>(), v[1].get<double>()};
  } else {
    rd.fail(ptr, "z entries must be numbers or [re, im] pairs");
  }
  if (!is_finite(z)) rd.fail(ptr, "z must be finite");
  try {
    sqrt_principal(z);
  } catch (const DomainError&) {
    std::ostringstream os;
    os << "z = (" << z.real() << ", " << z.imag() << ") lies on the spectrum [0, inf)";
    rd.fail(ptr, os.str());
  }
  return z;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what(), "", line_of_offset(text, e.byte));
  }
  const Reader rd(text);
  rd.allow_keys(doc, "", {"potential", "z_list", "discretization", "output", "scan", "hs", "threads"});

  RunConfig cfg;
  if (!doc.contains("potential")) rd.fail("/potential", "missing field 'potential'");
  cfg.potential = read_potential(rd, doc.at("potential"), base_dir);

  if (doc.contains("z_list")) {
    const json& zl = doc.at("z_list");
    if (!zl.is_array()) rd.fail("/z_list", "z_list must be an array");
    for (std::size_t i = 0; i < zl.size(); ++i) cfg.z_list.push_back(read_z(rd, zl[i], "/z_list/" + std::to_string(i)));
  }

  Discretization& d = cfg.discretization;
  if (doc.contains("discretization")) {
    const json& dj = doc.at("discretization");
    const std::string ptr = "/discretization";
    rd.allow_keys(dj, ptr, {"x_max", "n_panels", "nodes_per_panel", "l_max", "tolerance", "max_refinements"});
    d.x_max = rd.number_or(dj, ptr, "x_max", d.x_max);
    positive(rd, d.x_max, ptr + "/x_max");
    d.n_panels = rd.integer_or(dj, ptr, "n_panels", d.n_panels, 1, 4096);
    d.nodes_per_panel = rd.integer_or(dj, ptr, "nodes_per_panel", d.nodes_per_panel, 2, 64);
    d.l_max = rd.integer_or(dj, ptr, "l_max", d.l_max, 0, max_mode_index);
    d.tolerance = rd.number_or(dj, ptr, "tolerance", d.tolerance);
    d.max_refinements = rd.integer_or(dj, ptr, "max_refinements", d.max_refinements, 0, 8);
    try {
      validate_tolerance(d.tolerance, ptr + "/tolerance");
    } catch (const ConfigError& e) {
      rd.fail(e.field(), e.what());
    }
  }

  if (doc.contains("output")) {
    const json& oj = doc.at("output");
    const std::string ptr = "/output";
    rd.allow_keys(oj, ptr, {"path", "format"});
    if (oj.contains("path")) {
      std::filesystem::path p(rd.string(oj, ptr, "path"));
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      cfg.output_path = p.lexically_normal().string();
    }
    if (oj.contains("format")) {
      const std::string f = rd.string(oj, ptr, "format");
      if (f == "csv")
        cfg.format = ReportFormat::csv;
      else if (f == "json")
        cfg.format = ReportFormat::json;
      else
        rd.fail(ptr + "/format", "format must be 'csv' or 'json'");
    }
  }

  if (doc.contains("scan")) {
    const json& sj = doc.at("scan");
    const std::string ptr = "/scan";
    rd.allow_keys(sj, ptr, {"z_lo", "z_hi", "n_samples", "ell", "bc"});
    ScanSettings& s = cfg.scan;
    s.range.z_lo = rd.number_or(sj, ptr, "z_lo", s.range.z_lo);
    s.range.z_hi = rd.number_or(sj, ptr, "z_hi", s.range.z_hi);
    s.range.n_samples = rd.integer_or(sj, ptr, "n_samples", s.range.n_samples, 3, 100000);
    s.ell = rd.integer_or(sj, ptr, "ell", s.ell, -max_mode_index, max_mode_index);
    s.bc = rd.boundary_or(sj, ptr, "bc", s.bc);
    if (!(s.range.z_hi < 0.0)) rd.fail(ptr + "/z_hi", "scan range must lie in (-inf, 0)");
    if (!(s.range.z_lo < s.range.z_hi)) rd.fail(ptr + "/z_lo", "z_lo must be below z_hi");
  }

  if (doc.contains("hs")) {
    const json& hj = doc.at("hs");
    const std::string ptr = "/hs";
    rd.allow_keys(hj, ptr, {"levels", "ell", "bc"});
    cfg.hs.levels = rd.integer_or(hj, ptr, "levels", cfg.hs.levels, 3, 8);
    cfg.hs.ell = rd.integer_or(hj, ptr, "ell", cfg.hs.ell, -max_mode_index, max_mode_index);
    cfg.hs.bc = rd.boundary_or(hj, ptr, "bc", cfg.hs.bc);
  }

  cfg.threads = static_cast<std::size_t>(rd.integer_or(doc, "", "threads", 1, 1, 256));
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::filesystem::path p(path);
  const std::string base = p.has_parent_path() ? p.parent_path().string() : std::string(".");
  return parse_config(ss.str(), base);
}

namespace {

PotentialTable load_table(const std::string& path) {
  try {
    return read_potential_table(path);
  } catch (const Error& e) {
    throw ConfigError(e.what(), "/potential/path");
  }
}

}  // namespace

Potential1D make_potential_1d(const RunConfig& cfg) {
  const PotentialSpec& s = cfg.potential;
  const double x_max = cfg.discretization.x_max;
  try {
    switch (s.kind) {
      case PotentialKind::exp1d: return exponential_potential(s.amplitude, s.rate, x_max);
      case PotentialKind::well1d: return square_well(s.depth, s.width, x_max);
      case PotentialKind::table1d: return tabulated_potential(load_table(s.path), x_max);
      default: break;
    }
  } catch (const ParameterError& e) {
    throw ConfigError(e.what(), "/potential");
  }
  throw ConfigError(std::string("potential type '") + to_string(s.kind) + "' is radial; this command needs a half-line potential",
                    "/potential/type");
}

RadialPotential2D make_potential_2d(const RunConfig& cfg) {
  const PotentialSpec& s = cfg.potential;
  try {
    switch (s.kind) {
      case PotentialKind::radial_gaussian: return radial_gaussian(s.amplitude, s.width, s.R);
      case PotentialKind::radial_table: return radial_tabulated(load_table(s.path), s.R);
      default: break;
    }
  } catch (const ParameterError& e) {
    throw ConfigError(e.what(), "/potential");
  }
  throw ConfigError(std::string("potential type '") + to_string(s.kind) + "' is one-dimensional; this command needs a radial potential",
                    "/potential/type");
}

std::string table_extension_note(const RunConfig& cfg) {
  switch (cfg.potential.kind) {
    case PotentialKind::table1d:
      return "linear interpolation; first sample held constant toward x = 0; zero beyond the last sample";
    case PotentialKind::radial_table:
      return "linear interpolation; first sample held constant toward r = 0; zero beyond the last sample";
    default: return "none";
  }
}

}  // namespace detlab::cli
