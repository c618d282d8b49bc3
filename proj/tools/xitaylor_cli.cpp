// xitaylor: compute and verify the Taylor coefficients of xi at s = 1/2.
//
//   xitaylor coeffs --k-max 4 --routes theta,L,p:2 --tol 1e-10 --format json
//   xitaylor verify [--only p-polynomials]
//   xitaylor scan L --k 1 --grid 1:8 --step 1e-3
//   xitaylor oracle --k-max 4
//   xitaylor wallis --n 1000
#include "xitaylor/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Flags {
  std::optional<long long> k_max;
  std::optional<std::string> routes;
  std::optional<std::string> tol;
  std::optional<std::string> inequality_tol;
  std::optional<std::string> grid;
  std::optional<std::string> step;
  std::optional<std::string> only;
  std::optional<std::string> format;
  std::optional<std::string> out;
  std::optional<std::string> config;
  std::optional<unsigned> scan_k;
  std::optional<unsigned> wallis_n;
  std::string scan_target;
  bool perturb = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--tol", f.tol, "absolute tolerance (default 1e-10)");
  cmd->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", f.out, "write the report to this path instead of stdout");
  cmd->add_option("--config", f.config, "JSON config file; command-line flags take precedence");
}

xitaylor::RunConfig build_config(xitaylor::Command command, const Flags& f) {
  using namespace xitaylor;
  RunConfig cfg;
  cfg.command = command;
  if (command == Command::verify) cfg.routes = {RouteSpec{Route::theta, 0}};
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw ConfigError("cannot read config file '" + *f.config + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    apply_config_json(cfg, ss.str());
  }
  auto real_flag = [](const std::string& text, const char* name) {
    try {
      return parse_real(text);
    } catch (const std::exception&) {
      throw ConfigError(std::string(name) + ": not a number: '" + text + "'");
    }
  };
  if (f.k_max) {
    if (*f.k_max < 0) throw ConfigError("--k-max must be >= 0");
    cfg.k_max = static_cast<unsigned>(*f.k_max);
  }
  if (f.routes) cfg.routes = parse_routes(*f.routes);
  if (f.tol) cfg.tol = real_flag(*f.tol, "--tol");
  if (f.inequality_tol) cfg.inequality_tol = real_flag(*f.inequality_tol, "--inequality-tol");
  if (f.grid) std::tie(cfg.grid_lo, cfg.grid_hi) = parse_grid(*f.grid);
  if (f.step) cfg.step = real_flag(*f.step, "--step");
  if (f.only) {
    cfg.only.clear();
    std::istringstream is(*f.only);
    std::string part;
    while (std::getline(is, part, ',')) {
      if (!part.empty()) cfg.only.push_back(part);
    }
  }
  if (f.format) cfg.format = *f.format == "csv" ? Format::csv : Format::json;
  if (f.out) cfg.out_path = *f.out;
  if (!f.scan_target.empty()) cfg.scan_target = f.scan_target;
  if (f.scan_k) cfg.scan_k = *f.scan_k;
  if (f.wallis_n) cfg.wallis_n = *f.wallis_n;
  cfg.perturb_coefficient = f.perturb;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace xitaylor;
  CLI::App app{"Taylor coefficients of the completed zeta function at the central point"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  Flags f;
  auto* coeffs = app.add_subcommand("coeffs", "compute a_0 .. a_kmax on the requested routes");
  coeffs->add_option("--k-max", f.k_max, "largest k (default 4)");
  coeffs->add_option("--routes", f.routes, "comma list of theta, L, p:<n> (default theta,L)");
  add_common(coeffs, f);

  auto* verify = app.add_subcommand("verify", "run the claim suite; exit 3 if any claim fails");
  verify->add_option("--only", f.only, "comma list of modules to run");
  verify->add_option("--inequality-tol", f.inequality_tol, "tolerance for a_k positivity/monotonicity (default 1e-20)");
  verify->add_flag("--perturb-coefficient", f.perturb, "self-test: corrupt one coefficient of p(x;2)");
  add_common(verify, f);

  auto* scan = app.add_subcommand("scan", "minimum of L, B, U, UV or p2 over a grid");
  scan->add_option("target", f.scan_target, "L, B, U, UV or p2")->required();
  scan->add_option("--k", f.scan_k, "k for L, U and UV (default 1)");
  scan->add_option("--grid", f.grid, "lo:hi (default 1:8)");
  scan->add_option("--step", f.step, "grid step (default 1e-3)");
  add_common(scan, f);

  auto* oracle = app.add_subcommand("oracle", "a_k from an even-polynomial fit to xi(1/2+it)");
  oracle->add_option("--k-max", f.k_max, "largest k (<= 8)");
  add_common(oracle, f);

  auto* wallis_cmd = app.add_subcommand("wallis", "exact Wallis partial product");
  wallis_cmd->add_option("--n", f.wallis_n, "number of factors (default 10)");
  add_common(wallis_cmd, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Command command = Command::coeffs;
  if (verify->parsed()) command = Command::verify;
  if (scan->parsed()) command = Command::scan;
  if (oracle->parsed()) command = Command::oracle;
  if (wallis_cmd->parsed()) command = Command::wallis;

  RunConfig cfg;
  try {
    cfg = build_config(command, f);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const CommandOutput result = run_command(cfg);
  if (!result.message.empty()) std::cerr << result.message;
  if (!result.body.empty()) {
    if (cfg.out_path.empty()) {
      std::cout << result.body;
    } else {
      std::ofstream out(cfg.out_path);
      if (!out) {
        std::cerr << "error: cannot write '" << cfg.out_path << "'\n";
        return kExitUsage;
      }
      out << result.body;
    }
  }
  return result.exit_code;
}
