// Adaptive Gauss-Legendre quadrature for Gaussian-weighted integrands that are
// smooth inside unit windows but only finitely differentiable at integers.
//
// Panels never straddle an integer. Each panel is accepted when a 20-point
// Gauss-Legendre value agrees with the two half-panel values to within its
// share of the budget; the half-panel sum is kept and the disagreement is
// charged to the error bound. The semi-infinite tail beyond an integer cutoff
// is covered by a closed-form majorant.
#pragma once

#include "xitaylor/real.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace xitaylor {

struct PointEval {
  Real value = 0;
  Real abs_error = 0;  // pointwise evaluation error (e.g. series truncation)
};

enum class IntegrandKind { theta_direct, L_route, p_shifted, B_route, custom };

std::string to_string(IntegrandKind kind);

/// Describes one integrand on [lower, inf) (or [lower, upper] for custom).
///
///   theta_direct  2 x^{-3/4} [ (log x/2)^{2k-2}/(2k-2)! - (log x/2)^{2k}/(4 (2k)!) ] theta(x)
///                 with two_kappa = 2k >= 2; for two_kappa = 0 the integrand is
///                 x^{-3/4} theta(x) / 2, whose integral is 1 - a_0.
///   L_route       e^{-pi x^2} x^{-1/2} L(x; two_kappa/2)
///   p_shifted     e^{-pi x^2} x^{-1/2} (-1)^n p(-pi x^2; n)/2^n L~(x; two_kappa/2),
///                 L~ built on log(x/m), i.e. (-1)^{two_kappa} L.
///   B_route       e^{-pi x^2} x^{-1/2} B(x)
struct IntegrandSpec {
  IntegrandKind kind = IntegrandKind::custom;
  unsigned two_kappa = 0;
  unsigned shift = 0;
  unsigned theta_terms = 0;  // 0 selects the truncation automatically

  Real lower = 1;
  std::optional<Real> upper;  // custom only; unset means [lower, inf)
  std::function<PointEval(const Real&)> custom_fn;
  std::function<Real(const Real&)> custom_tail;  // bound on |int_X^inf f|

  static IntegrandSpec theta(unsigned two_kappa, unsigned theta_terms = 0);
  static IntegrandSpec L_route(unsigned two_kappa);
  static IntegrandSpec p_shifted(unsigned two_kappa, unsigned shift);
  static IntegrandSpec B_route();
  static IntegrandSpec custom(std::function<PointEval(const Real&)> fn, Real lower, std::optional<Real> upper,
                              std::function<Real(const Real&)> tail = {});
};

struct QuadratureResult {
  Real value = 0;
  Real abs_error_bound = 0;
  Real cutoff = 0;
  std::size_t intervals = 0;
  Real tail_bound = 0;
  bool converged = true;
  std::vector<std::pair<Real, Real>> panels;  // accepted panels, ascending
};

struct QuadratureOptions {
  std::size_t max_panels_per_window = 4096;
  bool parallel = false;
};

/// Integrates the spec to absolute tolerance tol: 9/10 of tol goes to the
/// windows up to the cutoff and 1/10 to the tail. Sets converged = false when
/// a window runs out of panels.
QuadratureResult integrate_piecewise(const IntegrandSpec& spec, const Real& tol, const QuadratureOptions& opts = {});

/// Pointwise integrand value (and evaluation error) for a spec.
PointEval evaluate_integrand(const IntegrandSpec& spec, const Real& x);

/// Rigorous bound on |int_X^inf f| for a spec with an infinite upper limit.
Real tail_bound(const IntegrandSpec& spec, const Real& X);

/// Bound on int_X^inf x^c log(x)^t exp(-rate x^order) dx for X >= e (X > 0
/// when t = 0) and order >= 1. Returns +inf when the linearised exponent does
/// not dominate the polynomial growth at X.
Real gaussian_tail_majorant(const Real& X, const Real& c, unsigned t, const Real& rate, unsigned order);

/// Bound on |int_X^inf e^{-pi x^2} x^{-1/2} L(x; two_kappa/2) dx| via |L| <= 2x log(x)^{2k}.
Real tail_bound_L(const Real& X, unsigned two_kappa);

/// Smallest integer X >= 3 with tail_bound_L(X, two_kappa) <= tol/10.
Real choose_cutoff(unsigned two_kappa, const Real& tol);

struct ThetaSum {
  Real value;
  Real remainder_bound;
  unsigned terms;
};

/// sum_{n>=1} e^{-pi n^2 x}, truncated at the smallest N with remainder bound <= tol.
ThetaSum theta_sum(const Real& x, const Real& tol);

/// Same, with a fixed number of terms.
ThetaSum theta_sum_fixed(const Real& x, unsigned terms);

/// Gauss-Legendre nodes and weights on [-1, 1] used by the engine.
const std::vector<std::pair<Real, Real>>& gauss_legendre_rule();

}  // namespace xitaylor
