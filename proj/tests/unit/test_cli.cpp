#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "detlab/cli/commands.hpp"
#include "detlab/cli/config.hpp"
#include "detlab/cli/report.hpp"
#include "detlab/halfline/spectral_point.hpp"
#include "json.hpp"

using namespace detlab;
using namespace detlab::cli;

namespace {

ConfigError config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "no ConfigError for\n" << text;
  return ConfigError("none");
}

const char* minimal = R"({
  "potential": {"type": "exp1d", "amplitude": -2.0, "rate": 1.0},
  "z_list": [-1.0, [-2.0, 0.5]],
  "output": {"path": "out.csv"}
})";

}  // namespace

TEST(Config, ParsesMinimalConfig) {
  const RunConfig c = parse_config(minimal, "/tmp/base");
  EXPECT_EQ(c.potential.kind, PotentialKind::exp1d);
  ASSERT_EQ(c.z_list.size(), 2u);
  EXPECT_EQ(c.z_list[1], cplx(-2.0, 0.5));
  EXPECT_EQ(c.format, ReportFormat::csv);
  EXPECT_EQ(c.output_path, "/tmp/base/out.csv");
  EXPECT_EQ(c.discretization.n_panels, Discretization{}.n_panels);
}

TEST(Config, UnknownKeyNamesFieldAndLine) {
  const ConfigError e = config_error(R"({
  "potential": {"type": "exp1d", "amplitude": -2.0,
                "rate": 1.0, "colour": 3},
  "z_list": [-1.0],
  "output": {"path": "out.csv"}
})");
  EXPECT_EQ(e.field(), "/potential/colour");
  EXPECT_EQ(e.line(), 3u);
}

TEST(Config, ToleranceRange) {
  const ConfigError e = config_error(R"({
  "potential": {"type": "exp1d", "amplitude": -2.0, "rate": 1.0},
  "z_list": [-1.0],
  "discretization": {"tolerance": 1e-14},
  "output": {"path": "out.csv"}
})");
  EXPECT_EQ(e.field(), "/discretization/tolerance");
  EXPECT_EQ(e.line(), 4u);
  EXPECT_THROW(validate_tolerance(0.5, "--tolerance"), ConfigError);
  EXPECT_NO_THROW(validate_tolerance(1e-12, "--tolerance"));
}

TEST(Config, EnergyOnSpectrumRejected) {
  const ConfigError e = config_error(R"({
  "potential": {"type": "exp1d", "amplitude": -2.0, "rate": 1.0},
  "z_list": [-1.0, 2.0],
  "output": {"path": "out.csv"}
})");
  EXPECT_EQ(e.field(), "/z_list/1");
}

TEST(Config, MalformedJsonReportsLine) {
  const ConfigError e = config_error("{\n  \"potential\": {\n  \"z_list\": [\n}");
  EXPECT_GT(e.line(), 0u);
}

TEST(Config, MissingRequiredKeys) {
  EXPECT_EQ(config_error(R"({"z_list": [-1.0], "output": {"path": "a.csv"}})").field(), "/potential");
  // output may come from --out instead
  EXPECT_NO_THROW(parse_config(R"({"potential": {"type": "exp1d", "amplitude": -1, "rate": 1}, "z_list": [-1.0]})"));
}

TEST(Config, BadPotentialParameters) {
  EXPECT_EQ(config_error(R"({"potential": {"type": "exp1d", "amplitude": -1, "rate": -1},
    "z_list": [-1.0], "output": {"path": "a.csv"}})").field(), "/potential/rate");
  EXPECT_EQ(config_error(R"({"potential": {"type": "spline"},
    "z_list": [-1.0], "output": {"path": "a.csv"}})").field(), "/potential/type");
}

TEST(Report, FormatRealRoundTrips) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(mant(rng), expo(rng));
    EXPECT_EQ(std::strtod(format_real(x).c_str(), nullptr), x) << format_real(x);
  }
  EXPECT_EQ(format_real(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_real(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_real(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Report, CsvLayout) {
  ReportTable t;
  t.metadata = {{"tool", "detlab"}};
  t.columns = {"name", "value", "count"};
  t.rows = {{std::string("a"), 0.1, 3LL}};
  EXPECT_EQ(render_csv(t), "# tool: detlab\nname,value,count\na,0.10000000000000001,3\n");
}

TEST(Report, JsonRoundTripIsBitExact) {
  ReportTable t;
  t.metadata = {{"tool", "detlab"}, {"note", "quote \" and \\ backslash"}};
  t.columns = {"name", "x", "n"};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::vector<double> xs;
  for (int i = 0; i < 50; ++i) {
    xs.push_back(u(rng) * std::pow(10.0, i % 7 - 3));
    t.rows.push_back({std::string("r") + std::to_string(i), xs.back(), static_cast<long long>(i)});
  }
  t.rows.push_back({std::string("bad"), std::numeric_limits<double>::quiet_NaN(), 0LL});
  const auto j = nlohmann::json::parse(render_json(t));
  EXPECT_EQ(j["metadata"]["note"], "quote \" and \\ backslash");
  ASSERT_EQ(j["rows"].size(), 51u);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(j["rows"][i]["x"].get<double>(), xs[i]);
  EXPECT_EQ(j["rows"][50]["x"], "nan");
}

TEST(Report, IdentityTableColumns) {
  IdentityReport r;
  r.name = "demo";
  r.point = sqrt_principal(-1.0);
  r.sides = {{"lhs", 1.0, "a"}, {"rhs", {1.0, 1e-9}, "b"}};
  finalize_report(r, 1e-6);
  const ReportTable t = identity_table({r});
  const std::vector<std::string> expected = {"identity", "z_re",   "z_im",      "lhs_re",    "lhs_im",
                                             "rhs_re",   "rhs_im", "abs_resid", "rel_resid", "converged"};
  EXPECT_EQ(t.columns, expected);
}

TEST(Report, WriteAtomicReplacesFile) {
  const std::filesystem::path dir = std::filesystem::path(::testing::TempDir()) / "detlab_atomic";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "out.csv").string();
  write_atomic(path, "first\n");
  write_atomic(path, "second\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "second\n");
  for (const auto& e : std::filesystem::directory_iterator(dir)) EXPECT_EQ(e.path().filename(), "out.csv");
  EXPECT_THROW(write_atomic((dir / "missing" / "x.csv").string(), "x"), ConfigError);
}

TEST(Commands, ScanReportMatchesOracle) {
  const RunConfig cfg = load_config(std::string(DETLAB_TEST_DATA_DIR) + "/scan_well.json");
  int code = exit_ok;
  std::ostringstream log;
  const ReportTable t = build_scan_report("halfline_N", cfg, code, log);
  EXPECT_EQ(code, exit_ok) << log.str();
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_NEAR(std::get<double>(t.rows[0][1]), -2.939374931781725, 1e-8);
}

TEST(Commands, UnknownSubjectIsConfigError) {
  std::ostringstream log;
  CommandOptions o;
  o.config_path = std::string(DETLAB_TEST_DATA_DIR) + "/exp_1d.json";
  o.out = ::testing::TempDir() + "unused.csv";
  EXPECT_EQ(cmd_verify("no-such-identity", o, log), exit_config);
  EXPECT_EQ(cmd_scan("halfline_X", o, log), exit_config);
}

TEST(Commands, MissingOutputIsConfigError) {
  const std::filesystem::path cfg = std::filesystem::path(::testing::TempDir()) / "no_output.json";
  std::ofstream(cfg) << R"({"potential": {"type": "exp1d", "amplitude": -1, "rate": 1}, "z_list": [-1.0]})";
  std::ostringstream log;
  CommandOptions o;
  o.config_path = cfg.string();
  EXPECT_EQ(cmd_verify("jost-pais", o, log), exit_config);
  EXPECT_NE(log.str().find("/output/path"), std::string::npos) << log.str();
}
