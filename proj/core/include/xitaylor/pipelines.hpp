// The coefficients a_k of xi(1/2 + it) = sum_k (-1)^k a_k t^{2k}, computed by
// three independent integral routes, together with the numerical checks of
// the identities that connect them.
#pragma once

#include "xitaylor/quadrature.hpp"
#include "xitaylor/real.hpp"

#include <optional>
#include <string>
#include <vector>

namespace xitaylor {

inline constexpr double kDefaultTol = 1e-10;

enum class Route { theta, L, p_shifted };

struct CoefficientRecord {
  unsigned k = 0;
  Route route = Route::theta;
  unsigned shift = 0;  // meaningful for Route::p_shifted
  Real value = 0;
  Real abs_error_bound = 0;

  std::string route_label() const;
};

/// Parses "theta", "L" or "p:<n>".
struct RouteSpec {
  Route route = Route::theta;
  unsigned shift = 0;

  static RouteSpec parse(const std::string& text);
  std::string label() const;
};

/// a_0 by the Gaussian + B(x) form and by 1 - (1/2) int x^{-3/4} theta.
struct A0Forms {
  CoefficientRecord b_form;
  CoefficientRecord theta_form;
  Real gaussian_piece = 0;  // int_{-1}^{1} e^{-pi x^2}
  Real gaussian_bound = 0;
};

A0Forms a0_forms(const Real& tol);

/// a_0 from the manifestly positive B-route form, cross-checked against the
/// theta form. Throws NotConverged, or std::runtime_error if the forms disagree.
CoefficientRecord a0_via_theta(const Real& tol);

CoefficientRecord ak_via_theta(unsigned k, const Real& tol);
CoefficientRecord ak_via_L(unsigned k, const Real& tol);
CoefficientRecord ak_via_p(unsigned k, unsigned n, const Real& tol);

/// Dispatches on the route; k = 0 always returns a0_via_theta.
CoefficientRecord compute_coefficient(unsigned k, const RouteSpec& route, const Real& tol);

struct IdentityCheck {
  Real lhs = 0;
  Real rhs = 0;
  Real residual = 0;
  Real bound = 0;  // combined certified bound of both sides

  bool within_bound() const { return residual <= bound; }
};

/// int_1^inf x^{-3/4} (log x / 2)^{2k} e^{-pi n^2 x} dx
///   = 2 int_n^inf log(n/x)^{2k} n^{-1/2} e^{-pi x^2} x^{-1/2} dx, for even two_kappa.
IdentityCheck verify_each_n(unsigned n, unsigned two_kappa, const Real& tol);

/// Integration by parts moving n powers of log(x/c) onto p(-pi x^2; n).
IdentityCheck verify_int_by_parts(const Real& c, unsigned m, unsigned n, const Real& tol);

/// Checks both closed-form antiderivatives in z of log(z/x)^{2k}/((2k)! sqrt z)
/// (and of the L-type combination) against quadrature over [a, b]. The
/// returned check is the worse of the two.
IdentityCheck verify_antiderivative(const Real& x, unsigned k, const Real& a, const Real& b, const Real& tol = Real(1e-25));

Real antiderivative_single(const Real& z, const Real& x, unsigned k);
Real antiderivative_pair(const Real& z, const Real& x, unsigned k);

struct WallisValue {
  unsigned N = 0;
  Rational value;
};

/// prod_{n=1}^N (2n)^2 / ((2n-1)(2n+1)); wallis(0) = 1.
WallisValue wallis(unsigned N);

struct MonotonicityEntry {
  unsigned k = 0;
  Real difference = 0;  // a_k - a_{k+1}
  Real bound = 0;       // combined error bound
  Real margin = 0;      // difference - bound
  bool ok() const { return margin > 0; }
};

struct ProofConstant {
  Rational computed;  // 1 + 2 Wallis(1) + (2^2/2) Wallis(1)^2
  Rational printed;   // value printed in the original argument
  bool erratum = false;
  bool exceeds_five = false;
};

ProofConstant proof_constant();

struct MonotonicityReport {
  std::vector<CoefficientRecord> coefficients;  // a_0 .. a_{kmax+1}
  std::vector<MonotonicityEntry> entries;       // k = 0 .. kmax
  ProofConstant constant;
  Real exp_margin_min = 0;  // min over x in [1, 10] of e^{2 pi x - pi} - 5
};

MonotonicityReport monotonicity_report(unsigned kmax, const Real& tol);

}  // namespace xitaylor
