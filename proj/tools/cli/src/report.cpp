#include "detlab/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "json.hpp"

namespace detlab::cli {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_real(double x) {
  // JSON has no literal for non-finite numbers
  if (!std::isfinite(x)) return json_string(format_real(x));
  return format_real(x);
}

std::string cell_csv(const Cell& c) {
  if (auto s = std::get_if<std::string>(&c)) return csv_escape(*s);
  if (auto d = std::get_if<double>(&c)) return format_real(*d);
  return std::to_string(std::get<long long>(c));
}

std::string cell_json(const Cell& c) {
  if (auto s = std::get_if<std::string>(&c)) return json_string(*s);
  if (auto d = std::get_if<double>(&c)) return json_real(*d);
  return std::to_string(std::get<long long>(c));
}

}  // namespace

std::string render_csv(const ReportTable& t) {
  std::string out;
  for (const auto& [k, v] : t.metadata) out += "# " + k + ": " + v + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_escape(t.columns[i]);
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_csv(row[i]);
    out += "\n";
  }
  return out;
}

std::string render_json(const ReportTable& t) {
  std::string out = "{\n  \"metadata\": {";
  for (std::size_t i = 0; i < t.metadata.size(); ++i)
    out += std::string(i ? "," : "") + "\n    " + json_string(t.metadata[i].first) + ": " +
           json_string(t.metadata[i].second);
  out += t.metadata.empty() ? "},\n" : "\n  },\n";
  out += "  \"columns\": [";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? ", " : "") + json_string(t.columns[i]);
  out += "],\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += std::string(r ? "," : "") + "\n    {";
    const auto& row = t.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i)
      out += (i ? ", " : "") + json_string(t.columns[i]) + ": " + cell_json(row[i]);
    if (r < t.row_diagnostics.size() && !t.row_diagnostics[r].empty()) {
      out += ", \"diagnostics\": {";
      const auto& dg = t.row_diagnostics[r];
      for (std::size_t i = 0; i < dg.size(); ++i)
        out += (i ? ", " : "") + json_string(dg[i].first) + ": " + json_real(dg[i].second);
      out += "}";
    }
    if (r < t.row_notes.size() && !t.row_notes[r].empty()) {
      out += ", \"notes\": [";
      for (std::size_t i = 0; i < t.row_notes[r].size(); ++i) out += (i ? ", " : "") + json_string(t.row_notes[r][i]);
      out += "]";
    }
    out += "}";
  }
  out += t.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

std::string render(const ReportTable& t, ReportFormat f) {
  return f == ReportFormat::json ? render_json(t) : render_csv(t);
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.empty()) throw ConfigError("no output path given", "/output/path");
  const fs::path target(path);
  const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw ConfigError("output directory '" + dir.string() + "' does not exist", "/output/path");
  const fs::path tmp = dir / ("." + target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write to '" + dir.string() + "'", "/output/path");
    out << content;
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw ConfigError("write to '" + tmp.string() + "' failed", "/output/path");
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ConfigError("cannot move report into '" + target.string() + "'", "/output/path");
  }
}

ReportTable identity_table(const std::vector<IdentityReport>& reports) {
  ReportTable t;
  std::size_t n_sides = 0;
  bool same_names = true;
  for (const auto& r : reports) {
    n_sides = std::max(n_sides, r.sides.size());
    if (r.sides.size() != reports.front().sides.size()) same_names = false;
    for (std::size_t i = 0; same_names && i < r.sides.size(); ++i)
      same_names = r.sides[i].name == reports.front().sides[i].name;
  }
  t.columns = {"identity", "z_re", "z_im"};
  for (std::size_t i = 0; i < n_sides; ++i) {
    const std::string base = same_names ? reports.front().sides[i].name : "side" + std::to_string(i + 1);
    t.columns.push_back(base + "_re");
    t.columns.push_back(base + "_im");
  }
  for (const char* c : {"abs_resid", "rel_resid", "converged"}) t.columns.push_back(c);
  if (!same_names) {
    std::vector<std::string> seen;
    for (const auto& r : reports) {
      std::string sig;
      for (std::size_t i = 0; i < r.sides.size(); ++i) sig += (i ? " " : "") + r.sides[i].name;
      if (std::find(seen.begin(), seen.end(), sig) == seen.end()) seen.push_back(sig);
    }
    std::string all;
    for (std::size_t i = 0; i < seen.size(); ++i) all += (i ? "; " : "") + seen[i];
    t.metadata.emplace_back("side_columns", all);
  }

  for (const auto& r : reports) {
    std::vector<Cell> row{r.name, r.point.z.real(), r.point.z.imag()};
    for (std::size_t i = 0; i < n_sides; ++i) {
      const double nan = std::nan("");
      row.push_back(i < r.sides.size() ? r.sides[i].value.real() : nan);
      row.push_back(i < r.sides.size() ? r.sides[i].value.imag() : nan);
    }
    row.push_back(r.abs_residual);
    row.push_back(r.rel_residual);
    row.push_back(static_cast<long long>(r.converged ? 1 : 0));
    t.rows.push_back(std::move(row));
    auto diag = r.diagnostics;
    diag.emplace_back("tolerance", r.tolerance);
    t.row_diagnostics.push_back(std::move(diag));
    std::vector<std::string> notes = r.notes;
    if (!same_names) {
      std::string names = "sides:";
      for (const auto& s : r.sides) names += " " + s.name;
      notes.insert(notes.begin(), names);
    }
    for (const auto& s : r.sides) notes.push_back("pipeline " + s.name + ": " + s.pipeline);
    t.row_notes.push_back(std::move(notes));
  }
  return t;
}

}  // namespace detlab::cli
