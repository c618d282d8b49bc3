#include "xitaylor/report.hpp"

#include "xitaylor/zeta_oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#ifndef XITAYLOR_VERSION
#define XITAYLOR_VERSION "0.0.0"
#endif

namespace xitaylor {

namespace {

using nlohmann::ordered_json;

std::string num(const Real& v) { return to_decimal(v, 34); }

std::string format_name(Format f) { return f == Format::json ? "json" : "csv"; }

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json routes = ordered_json::array();
  for (const auto& r : cfg.routes) routes.push_back(r.label());
  return ordered_json{
      {"command", to_string(cfg.command)},
      {"k_max", cfg.k_max},
      {"routes", routes},
      {"tol", num(cfg.tol)},
      {"inequality_tol", num(cfg.inequality_tol)},
      {"grid", {num(cfg.grid_lo), num(cfg.grid_hi)}},
      {"step", num(cfg.step)},
      {"only", cfg.only},
      {"format", format_name(cfg.format)},
      {"scan_target", cfg.scan_target},
      {"scan_k", cfg.scan_k},
      {"wallis_n", cfg.wallis_n},
  };
}

ordered_json coefficient_json(const CoefficientRecord& r) {
  return ordered_json{{"k", r.k},
                      {"route", r.route_label()},
                      {"value", num(r.value)},
                      {"abs_error_bound", num(r.abs_error_bound)}};
}

Real json_real(const nlohmann::json& v, const std::string& key) {
  if (v.is_number()) return Real(v.get<double>());
  if (v.is_string()) {
    try {
      return parse_real(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("config: '" + key + "' must be a number or decimal string");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) {
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

CommandOutput finish(std::string body, int code, std::string message = {}) {
  return CommandOutput{code, std::move(body), std::move(message)};
}

}  // namespace

const char* version() { return XITAYLOR_VERSION; }

std::string to_string(Command c) {
  switch (c) {
    case Command::coeffs: return "coeffs";
    case Command::verify: return "verify";
    case Command::scan: return "scan";
    case Command::oracle: return "oracle";
    case Command::wallis: return "wallis";
  }
  return "?";
}

Command parse_command(const std::string& s) {
  for (Command c : {Command::coeffs, Command::verify, Command::scan, Command::oracle, Command::wallis}) {
    if (to_string(c) == s) return c;
  }
  throw ConfigError("unknown command '" + s + "'");
}

void RunConfig::validate() const {
  if (!(tol > 0)) throw ConfigError("tol must be > 0");
  if (!(inequality_tol > 0)) throw ConfigError("inequality_tol must be > 0");
  if (!(step > 0)) throw ConfigError("step must be > 0");
  if (!(grid_hi >= grid_lo)) throw ConfigError("grid upper end must be >= lower end");
  if (routes.empty()) throw ConfigError("at least one route is required");
  for (const auto& m : only) {
    const auto& mods = verification_modules();
    if (std::find(mods.begin(), mods.end(), m) == mods.end()) throw ConfigError("unknown module '" + m + "' in --only");
  }
  if (command == Command::scan) {
    const bool needs_x_ge_1 = scan_target != "p2";
    if (needs_x_ge_1 && grid_lo < 1) throw ConfigError("scan grid must start at x >= 1 for " + scan_target);
  }
  if (command == Command::oracle && k_max > 8) throw ConfigError("oracle supports k_max <= 8");
  if ((command == Command::verify || command == Command::wallis) && format == Format::csv) {
    throw ConfigError("csv output is only available for coefficient tables and scans");
  }
}

std::pair<Real, Real> parse_grid(const std::string& text) {
  const auto pos = text.find(':');
  if (pos == std::string::npos) throw ConfigError("grid must be lo:hi, got '" + text + "'");
  try {
    return {parse_real(text.substr(0, pos)), parse_real(text.substr(pos + 1))};
  } catch (const std::exception&) {
    throw ConfigError("grid must be lo:hi, got '" + text + "'");
  }
}

std::vector<RouteSpec> parse_routes(const std::string& text) {
  std::vector<RouteSpec> routes;
  for (const auto& part : split(text, ',')) {
    try {
      routes.push_back(RouteSpec::parse(part));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (routes.empty()) throw ConfigError("empty route list");
  return routes;
}

void apply_config_json(RunConfig& cfg, const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  for (const auto& [key, v] : doc.items()) {
    try {
      if (key == "k_max") {
        const auto k = v.get<long long>();
        if (k < 0) throw ConfigError("config: k_max must be >= 0");
        cfg.k_max = static_cast<unsigned>(k);
      } else if (key == "routes") {
        if (v.is_string()) {
          cfg.routes = parse_routes(v.get<std::string>());
        } else {
          std::string joined;
          for (const auto& r : v) joined += r.get<std::string>() + ",";
          cfg.routes = parse_routes(joined);
        }
      } else if (key == "tol") {
        cfg.tol = json_real(v, key);
      } else if (key == "inequality_tol") {
        cfg.inequality_tol = json_real(v, key);
      } else if (key == "grid") {
        if (v.is_string()) {
          std::tie(cfg.grid_lo, cfg.grid_hi) = parse_grid(v.get<std::string>());
        } else {
          cfg.grid_lo = json_real(v.at(0), key);
          cfg.grid_hi = json_real(v.at(1), key);
        }
      } else if (key == "step") {
        cfg.step = json_real(v, key);
      } else if (key == "only") {
        cfg.only.clear();
        if (v.is_string()) {
          cfg.only = split(v.get<std::string>(), ',');
        } else {
          for (const auto& m : v) cfg.only.push_back(m.get<std::string>());
        }
      } else if (key == "format") {
        const auto f = v.get<std::string>();
        if (f == "json") {
          cfg.format = Format::json;
        } else if (f == "csv") {
          cfg.format = Format::csv;
        } else {
          throw ConfigError("config: format must be json or csv");
        }
      } else if (key == "out") {
        cfg.out_path = v.get<std::string>();
      } else if (key == "scan_target") {
        cfg.scan_target = v.get<std::string>();
      } else if (key == "scan_k") {
        cfg.scan_k = v.get<unsigned>();
      } else if (key == "wallis_n") {
        cfg.wallis_n = v.get<unsigned>();
      } else {
        throw ConfigError("config: unknown key '" + key + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config: bad value for '" + key + "': " + e.what());
    }
  }
}

std::string render_json(const RunConfig& cfg, const std::vector<Claim>& claims,
                        const std::vector<CoefficientRecord>& coefficients, const std::string& extra_key,
                        const std::string& extra_json) {
  ordered_json doc;
  doc["version"] = version();
  doc["generated_at"] = now_utc();
  doc["config"] = config_json(cfg);
  ordered_json cl = ordered_json::array();
  std::size_t passed = 0;
  for (const auto& c : claims) {
    cl.push_back(ordered_json{{"id", c.id},
                              {"module", c.module},
                              {"anchor", c.anchor},
                              {"status", c.passed ? "pass" : "fail"},
                              {"residual", num(c.residual)},
                              {"bound", num(c.bound)},
                              {"detail", c.detail}});
    if (c.passed) ++passed;
  }
  doc["claims"] = cl;
  ordered_json co = ordered_json::array();
  for (const auto& r : coefficients) co.push_back(coefficient_json(r));
  doc["coefficients"] = co;
  if (!extra_key.empty()) doc[extra_key] = ordered_json::parse(extra_json);
  doc["summary"] = ordered_json{{"claims", claims.size()},
                                {"passed", passed},
                                {"failed", claims.size() - passed},
                                {"coefficients", coefficients.size()}};
  return doc.dump(2) + "\n";
}

std::string render_coefficients_csv(const std::vector<CoefficientRecord>& coefficients) {
  std::string out = "k,route,value,abs_error_bound\n";
  for (const auto& r : coefficients) {
    out += std::to_string(r.k) + "," + r.route_label() + "," + num(r.value) + "," + num(r.abs_error_bound) + "\n";
  }
  return out;
}

CommandOutput run_command(const RunConfig& cfg) {
  try {
    cfg.validate();
    switch (cfg.command) {
      case Command::coeffs: {
        std::vector<CoefficientRecord> recs;
        recs.push_back(a0_via_theta(cfg.tol));
        for (unsigned k = 1; k <= cfg.k_max; ++k) {
          for (const auto& r : cfg.routes) recs.push_back(compute_coefficient(k, r, cfg.tol));
        }
        if (cfg.format == Format::csv) return finish(render_coefficients_csv(recs), kExitOk);
        return finish(render_json(cfg, {}, recs), kExitOk);
      }
      case Command::verify: {
        const VerificationReport rep = run_verification(cfg);
        const int code = rep.failed() == 0 ? kExitOk : kExitVerifyFailed;
        std::string msg;
        for (const auto& c : rep.claims) {
          if (!c.passed) msg += "FAILED claim " + c.id + " (" + c.module + "): " + c.detail + "\n";
        }
        return finish(render_json(cfg, rep.claims, rep.coefficients), code, msg);
      }
      case Command::scan: {
        const ScanResult s = run_scan(cfg);
        const bool nonneg = s.min_value >= 0;
        if (cfg.format == Format::csv) {
          return finish(
                        "target,min,argmin,points\n" + s.target + "," + num(s.min_value) + "," + num(s.argmin) + "," +
                            std::to_string(s.points) + "\n",
                        nonneg ? kExitOk : kExitVerifyFailed);
        }
        ordered_json extra{{"target", s.target},
                           {"k", cfg.scan_k},
                           {"min", num(s.min_value)},
                           {"argmin", num(s.argmin)},
                           {"points", s.points},
                           {"nonnegative", nonneg}};
        return finish(render_json(cfg, {}, {}, "scan", extra.dump()), nonneg ? kExitOk : kExitVerifyFailed);
      }
      case Command::oracle: {
        const OracleFit fit = oracle_coefficients(cfg.k_max, cfg.tol);
        std::vector<CoefficientRecord> recs;
        ordered_json rows = ordered_json::array();
        for (const auto& c : fit.coefficients) {
          rows.push_back(ordered_json{{"k", c.k}, {"value", num(c.value)}, {"est_error", num(c.est_error)}});
        }
        if (cfg.format == Format::csv) {
          std::string out = "k,value,est_error\n";
          for (const auto& c : fit.coefficients) out += std::to_string(c.k) + "," + num(c.value) + "," + num(c.est_error) + "\n";
          return finish(out, fit.ill_conditioned ? kExitNotConverged : kExitOk);
        }
        ordered_json extra{{"half_width", num(fit.half_width)},
                           {"degree", fit.degree},
                           {"ill_conditioned", fit.ill_conditioned},
                           {"coefficients", rows}};
        return finish(render_json(cfg, {}, recs, "oracle", extra.dump()),
                      fit.ill_conditioned ? kExitNotConverged : kExitOk,
                      fit.ill_conditioned ? "oracle fit sensitivity exceeds tol\n" : "");
      }
      case Command::wallis: {
        const WallisValue w = wallis(cfg.wallis_n);
        const ProofConstant pc = proof_constant();
        const Real value = to_real(w.value);
        ordered_json extra{{"N", w.N},
                           {"numerator", boost::multiprecision::numerator(w.value).str()},
                           {"denominator", boost::multiprecision::denominator(w.value).str()},
                           {"value", num(value)},
                           {"half_pi_minus_value", num(pi() / 2 - value)},
                           {"proof_constant", {{"computed", pc.computed.str()},
                                               {"printed", pc.printed.str()},
                                               {"erratum", pc.erratum},
                                               {"computed_minus_five_positive", pc.exceeds_five}}}};
        return finish(render_json(cfg, {}, {}, "wallis", extra.dump()), kExitOk);
      }
    }
  } catch (const ConfigError& e) {
    return CommandOutput{kExitUsage, {}, std::string("error: ") + e.what() + "\n"};
  } catch (const NotConverged& e) {
    return CommandOutput{kExitNotConverged, {}, std::string("not converged: ") + e.what() + "\n"};
  } catch (const std::logic_error& e) {
    // domain errors from out-of-range parameters
    return CommandOutput{kExitUsage, {}, std::string("error: ") + e.what() + "\n"};
  } catch (const std::runtime_error& e) {
    return CommandOutput{kExitVerifyFailed, {}, std::string("verification failed: ") + e.what() + "\n"};
  }
  return CommandOutput{kExitUsage, {}, "error: unhandled command\n"};
}

}  // namespace xitaylor
