#include "xitaylor/report.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <regex>
#include <set>

using namespace xitaylor;
using nlohmann::json;

namespace {

RunConfig config_for(Command c) {
  RunConfig cfg;
  cfg.command = c;
  return cfg;
}

bool is_decimal_string(const json& v) {
  static const std::regex re(R"(^-?\d\.\d+e[+-]\d+$|^-?inf$)");
  return v.is_string() && std::regex_match(v.get<std::string>(), re);
}

std::string strip_timestamp(std::string body) {
  return std::regex_replace(body, std::regex(R"("generated_at": "[^"]*")"), "\"generated_at\": \"\"");
}

}  // namespace

TEST(Report, ParseCommand) {
  EXPECT_EQ(parse_command("coeffs"), Command::coeffs);
  EXPECT_EQ(parse_command("wallis"), Command::wallis);
  EXPECT_EQ(to_string(Command::scan), "scan");
  EXPECT_THROW(parse_command("plot"), ConfigError);
}

TEST(Report, ParseGridAndRoutes) {
  const auto [lo, hi] = parse_grid("1.5:8");
  EXPECT_EQ(lo, Real(1.5));
  EXPECT_EQ(hi, Real(8));
  EXPECT_THROW(parse_grid("1-8"), ConfigError);
  EXPECT_THROW(parse_grid("a:b"), ConfigError);
  const auto routes = parse_routes("theta,L,p:2");
  ASSERT_EQ(routes.size(), 3u);
  EXPECT_EQ(routes[2].shift, 2u);
  EXPECT_THROW(parse_routes(""), ConfigError);
  EXPECT_THROW(parse_routes("theta,q"), ConfigError);
}

TEST(Report, ValidateRejectsBadConfigs) {
  RunConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.tol = Real(-1);
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = RunConfig{};
  cfg.step = Real(0);
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = RunConfig{};
  cfg.only = {"nonsense"};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = config_for(Command::scan);
  cfg.grid_lo = Real(0.5);
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.scan_target = "p2";
  EXPECT_NO_THROW(cfg.validate());
  cfg = config_for(Command::oracle);
  cfg.k_max = 9;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = config_for(Command::verify);
  cfg.format = Format::csv;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Report, ConfigJson) {
  RunConfig cfg;
  apply_config_json(cfg, R"({"k_max": 2, "routes": ["L", "p:1"], "tol": "1e-12", "grid": "2:3", "format": "csv"})");
  EXPECT_EQ(cfg.k_max, 2u);
  ASSERT_EQ(cfg.routes.size(), 2u);
  EXPECT_EQ(cfg.routes[1].label(), "p:1");
  EXPECT_EQ(cfg.tol, parse_real("1e-12"));
  EXPECT_EQ(cfg.grid_lo, Real(2));
  EXPECT_EQ(cfg.format, Format::csv);
  EXPECT_THROW(apply_config_json(cfg, R"({"kmax": 2})"), ConfigError);
  EXPECT_THROW(apply_config_json(cfg, R"({"k_max": -1})"), ConfigError);
  EXPECT_THROW(apply_config_json(cfg, R"({"tol": true})"), ConfigError);
  EXPECT_THROW(apply_config_json(cfg, "[1,2]"), ConfigError);
  EXPECT_THROW(apply_config_json(cfg, "{"), ConfigError);
}

TEST(Report, CoeffsJsonSchema) {
  RunConfig cfg = config_for(Command::coeffs);
  cfg.k_max = 2;
  const CommandOutput out = run_command(cfg);
  ASSERT_EQ(out.exit_code, kExitOk) << out.message;
  const json doc = json::parse(out.body);
  // json sorts keys on parse, so order is checked on the raw text.
  for (const char* k : {"version", "config", "claims", "coefficients", "summary"}) EXPECT_TRUE(doc.contains(k)) << k;
  EXPECT_LT(out.body.find("\"version\""), out.body.find("\"config\""));
  EXPECT_LT(out.body.find("\"config\""), out.body.find("\"claims\""));
  EXPECT_LT(out.body.find("\"claims\""), out.body.find("\"coefficients\""));
  EXPECT_LT(out.body.find("\"coefficients\""), out.body.find("\"summary\""));
  EXPECT_EQ(doc["version"], version());
  EXPECT_TRUE(is_decimal_string(doc["config"]["tol"]));

  const auto& coeffs = doc["coefficients"];
  ASSERT_EQ(coeffs.size(), 5u);  // a0, then theta and L for k = 1, 2
  EXPECT_EQ(coeffs[0]["k"], 0);
  for (const auto& c : coeffs) {
    EXPECT_TRUE(is_decimal_string(c["value"])) << c.dump();
    EXPECT_TRUE(is_decimal_string(c["abs_error_bound"])) << c.dump();
    EXPECT_LE(parse_real(c["abs_error_bound"].get<std::string>()), cfg.tol);
  }
  EXPECT_EQ(doc["summary"]["coefficients"], 5);
}

TEST(Report, OutputIsReproducible) {
  RunConfig cfg = config_for(Command::coeffs);
  cfg.k_max = 1;
  cfg.routes = parse_routes("theta,L,p:1");
  const std::string a = strip_timestamp(run_command(cfg).body);
  const std::string b = strip_timestamp(run_command(cfg).body);
  EXPECT_EQ(a, b);
}

TEST(Report, CoeffsCsv) {
  RunConfig cfg = config_for(Command::coeffs);
  cfg.k_max = 1;
  cfg.format = Format::csv;
  const CommandOutput out = run_command(cfg);
  ASSERT_EQ(out.exit_code, kExitOk);
  EXPECT_EQ(out.body.rfind("k,route,value,abs_error_bound\n", 0), 0u);
  EXPECT_EQ(std::count(out.body.begin(), out.body.end(), '\n'), 4);
}

TEST(Report, VerifyModuleSelection) {
  RunConfig cfg = config_for(Command::verify);
  cfg.only = {"p-polynomials"};
  const VerificationReport rep = run_verification(cfg);
  EXPECT_FALSE(rep.claims.empty());
  EXPECT_EQ(rep.failed(), 0u);
  for (const auto& c : rep.claims) EXPECT_EQ(c.module, "p-polynomials");
  EXPECT_EQ(run_command(cfg).exit_code, kExitOk);
}

TEST(Report, InjectedFaultIsDetected) {
  RunConfig cfg = config_for(Command::verify);
  cfg.only = {"p-polynomials"};
  cfg.perturb_coefficient = true;
  const CommandOutput out = run_command(cfg);
  EXPECT_EQ(out.exit_code, kExitVerifyFailed);
  const json doc = json::parse(out.body);
  EXPECT_GT(doc["summary"]["failed"].get<int>(), 0);
  EXPECT_NE(out.message.find("FAILED"), std::string::npos);
}

TEST(Report, FullVerificationPasses) {
  const CommandOutput out = run_command(config_for(Command::verify));
  EXPECT_EQ(out.exit_code, kExitOk) << out.message;
  const json doc = json::parse(out.body);
  std::set<std::string> modules;
  for (const auto& c : doc["claims"]) {
    modules.insert(c["module"].get<std::string>());
    EXPECT_EQ(c["status"], "pass") << c.dump();
    EXPECT_TRUE(is_decimal_string(c["residual"]));
    EXPECT_TRUE(is_decimal_string(c["bound"]));
  }
  EXPECT_EQ(modules.size(), verification_modules().size());
}

TEST(Report, Scan) {
  RunConfig cfg = config_for(Command::scan);
  cfg.scan_target = "UV";
  cfg.grid_lo = Real(1);
  cfg.grid_hi = Real(4);
  cfg.step = Real(0.01);
  const ScanResult s = run_scan(cfg);
  EXPECT_EQ(s.points, 301u);
  EXPECT_GE(s.min_value, 0);
  EXPECT_EQ(run_command(cfg).exit_code, kExitOk);

  cfg.scan_target = "p2";
  cfg.grid_lo = Real(0);
  cfg.grid_hi = Real(1);
  // p(-pi x^2;2)/4 - 1 is negative near x = 0.5, so the scan reports a failure.
  EXPECT_LT(run_scan(cfg).min_value, 0);
  EXPECT_EQ(run_command(cfg).exit_code, kExitVerifyFailed);

  cfg.scan_target = "W";
  cfg.grid_lo = Real(1);
  EXPECT_EQ(run_command(cfg).exit_code, kExitUsage);
}

TEST(Report, WallisAndOracle) {
  RunConfig cfg = config_for(Command::wallis);
  cfg.wallis_n = 2;
  CommandOutput out = run_command(cfg);
  ASSERT_EQ(out.exit_code, kExitOk);
  json doc = json::parse(out.body);
  EXPECT_EQ(doc["wallis"]["numerator"], "64");
  EXPECT_EQ(doc["wallis"]["denominator"], "45");
  EXPECT_EQ(doc["wallis"]["proof_constant"]["computed"], "65/9");
  EXPECT_EQ(doc["wallis"]["proof_constant"]["erratum"], true);

  cfg = config_for(Command::oracle);
  cfg.k_max = 3;
  out = run_command(cfg);
  ASSERT_EQ(out.exit_code, kExitOk);
  doc = json::parse(out.body);
  EXPECT_EQ(doc["oracle"]["coefficients"].size(), 4u);
}

TEST(Report, ExitCodes) {
  RunConfig cfg;
  cfg.tol = Real(-1);
  EXPECT_EQ(run_command(cfg).exit_code, kExitUsage);
  cfg = config_for(Command::coeffs);
  cfg.k_max = 1;
  cfg.tol = Real(1e-60);  // below working precision: the bound cannot be met
  EXPECT_EQ(run_command(cfg).exit_code, kExitNotConverged);
}
