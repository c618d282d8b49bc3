// Command surface shared by the CLI: run configuration, the verification
// claim suite and machine-readable reports.
//
// Exit codes: 0 success, 1 usage/config error, 2 numerical non-convergence,
// 3 verification failure.
#pragma once

#include "xitaylor/pipelines.hpp"
#include "xitaylor/real.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace xitaylor {

const char* version();

enum class Command { coeffs, verify, scan, oracle, wallis };
enum class Format { json, csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitVerifyFailed = 3;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string to_string(Command c);
Command parse_command(const std::string& s);

struct RunConfig {
  Command command = Command::coeffs;
  unsigned k_max = 4;
  std::vector<RouteSpec> routes{RouteSpec{Route::theta, 0}, RouteSpec{Route::L, 0}};
  Real tol = parse_real("1e-10");
  Real inequality_tol = parse_real("1e-20");  // tolerance for a_k positivity/monotonicity claims
  Real grid_lo = 1;
  Real grid_hi = 8;
  Real step = parse_real("1e-3");
  std::vector<std::string> only;  // module filter for verify
  std::string out_path;
  Format format = Format::json;
  std::string scan_target = "L";
  unsigned scan_k = 1;
  unsigned wallis_n = 10;
  bool perturb_coefficient = false;  // fault injection for harness self-tests

  /// Throws ConfigError on violated invariants.
  void validate() const;
};

/// Applies keys from a JSON config document onto cfg (unknown keys are errors).
void apply_config_json(RunConfig& cfg, const std::string& json_text);

/// Parses "lo:hi".
std::pair<Real, Real> parse_grid(const std::string& text);
std::vector<RouteSpec> parse_routes(const std::string& text);

struct Claim {
  std::string id;
  std::string module;
  std::string anchor;
  bool passed = false;
  Real residual = 0;
  Real bound = 0;
  std::string detail;
};

struct VerificationReport {
  std::vector<Claim> claims;
  std::vector<CoefficientRecord> coefficients;

  std::size_t passed() const;
  std::size_t failed() const;
};

/// Module names accepted by --only.
const std::vector<std::string>& verification_modules();

VerificationReport run_verification(const RunConfig& cfg);

struct ScanResult {
  std::string target;
  Real min_value = 0;
  Real argmin = 0;
  std::size_t points = 0;
};

ScanResult run_scan(const RunConfig& cfg);

struct CommandOutput {
  int exit_code = kExitOk;
  std::string body;
  std::string message;  // diagnostic for stderr
};

/// Runs one command end to end and renders its report. Never throws for
/// numerical failures; they map to exit codes.
CommandOutput run_command(const RunConfig& cfg);

/// Renders a report in the stable JSON schema. `generated_at` is the only
/// field that varies between identical runs.
std::string render_json(const RunConfig& cfg, const std::vector<Claim>& claims,
                        const std::vector<CoefficientRecord>& coefficients, const std::string& extra_key = {},
                        const std::string& extra_json = {});

std::string render_coefficients_csv(const std::vector<CoefficientRecord>& coefficients);

}  // namespace xitaylor
