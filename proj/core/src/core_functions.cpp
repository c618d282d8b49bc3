#include "xitaylor/core_functions.hpp"

#include <boost/math/special_functions/binomial.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace xitaylor {

namespace {

void require_x_at_least_one(const Real& x, const char* what) {
  if (!(x >= 1)) {
    throw std::domain_error(std::string(what) + ": x must be >= 1, got " + to_decimal(x, 17));
  }
}

// log^t/t! - log^{t+2}/((t+2)! 4) for a single log value.
Real l_term(const Real& lg, unsigned t) {
  const Real lt = ipow(lg, t);
  return lt * inv_factorial(t) - lt * lg * lg * inv_factorial(t + 2) / 4;
}

// (lg^{t+2}/(t+2)! + 2 lg^{t+1}/(t+1)!)
Real uv_bracket(const Real& lg, unsigned t) {
  const Real l1 = ipow(lg, t + 1);
  return l1 * lg * inv_factorial(t + 2) + 2 * l1 * inv_factorial(t + 1);
}

}  // namespace

WindowIndex WindowIndex::containing(const Real& x) {
  require_x_at_least_one(x, "WindowIndex");
  return WindowIndex{static_cast<std::int64_t>(floor(x))};
}

Real eval_L(const Real& x, LParam p) {
  require_x_at_least_one(x, "eval_L");
  const std::int64_t M = WindowIndex::containing(x).M;
  Real sum = 0;
  for (std::int64_t n = 1; n <= M; ++n) {
    const Real rn(n);
    sum += l_term(log(rn / x), p.two_kappa) / sqrt(rn);
  }
  return sum;
}

Real eval_B(const Real& x) {
  require_x_at_least_one(x, "eval_B");
  const std::int64_t M = WindowIndex::containing(x).M;
  Real partial = 0;
  for (std::int64_t n = 1; n <= M; ++n) partial += 1 / sqrt(Real(n));
  return 2 * sqrt(x) - partial;
}

Real eval_U(const Real& x, std::int64_t n, LParam p) {
  if (n <= 0) throw std::domain_error("eval_U: n must be >= 1");
  if (!(x > 0)) throw std::domain_error("eval_U: x must be > 0");
  const Real rn(n);
  const Real sn = sqrt(rn);
  const Real lg = log(x / rn);
  const unsigned t = p.two_kappa;
  return ipow(lg, t) * inv_factorial(t) / sn - sn / 2 * uv_bracket(lg, t);
}

Real eval_V(const Real& x, std::int64_t n, LParam p) {
  if (n < 0) throw std::domain_error("eval_V: n must be >= 0");
  if (!(x > 0)) throw std::domain_error("eval_V: x must be > 0");
  const Real rn1(n + 1);
  const Real sn1 = sqrt(rn1);
  const Real lg = log(x / rn1);
  const unsigned t = p.two_kappa;
  return sn1 / 2 * uv_bracket(lg, t) - ipow(lg, t + 2) * inv_factorial(t + 2) / (4 * sn1);
}

Real eval_V0_reduced(const Real& x, LParam p) {
  if (!(x > 0)) throw std::domain_error("eval_V0_reduced: x must be > 0");
  const Real lg = log(x);
  const unsigned t = p.two_kappa;
  return ipow(lg, t + 2) * inv_factorial(t + 2) / 4 + ipow(lg, t + 1) * inv_factorial(t + 1);
}

Real eval_U_window_form(const Real& x, std::int64_t M, LParam p) {
  if (M <= 0) throw std::domain_error("eval_U_window_form: M must be >= 1");
  const Real rm(M);
  const Real sm = sqrt(rm);
  const Real lg = log(rm / x);
  const unsigned t = p.two_kappa;
  const Real bracket = ipow(lg, t + 2) * inv_factorial(t + 2) - 2 * ipow(lg, t + 1) * inv_factorial(t + 1);
  return ipow(lg, t) * inv_factorial(t) / sm - sm / 2 * bracket;
}

Real eval_L_decomposed(const Real& x, LParam p) {
  require_x_at_least_one(x, "eval_L_decomposed");
  if (!p.integer_k()) throw std::domain_error("eval_L_decomposed: two_kappa must be even");
  const std::int64_t M = WindowIndex::containing(x).M;
  Real sum = eval_V(x, 0, p) + eval_U(x, M, p);
  for (std::int64_t n = 1; n <= M - 1; ++n) sum += eval_V(x, n, p) + eval_U(x, n, p);
  return sum;
}

Real bound_L(const Real& x, unsigned k) {
  if (!(x >= euler_e())) throw std::domain_error("bound_L: x must be >= e");
  return 2 * x * ipow(log(x), 2 * k);
}

Real smoothness_probe(std::int64_t M, unsigned k, unsigned order, const Real& h) {
  if (M < 2) throw std::domain_error("smoothness_probe: M must be >= 2");
  if (k < 1) throw std::domain_error("smoothness_probe: k must be >= 1");
  if (order < 1 || order > 2 * k) throw std::domain_error("smoothness_probe: need 1 <= order <= 2k");
  if (!(h > 0 && h < Real(0.25))) throw std::domain_error("smoothness_probe: need 0 < h < 1/4");

  const LParam p = LParam::from_k(k);
  const Real xm(M);
  Real forward = 0;
  Real backward = 0;
  for (unsigned j = 0; j <= order; ++j) {
    const Real c = Real(boost::math::binomial_coefficient<double>(order, j));
    const Real sign = ((order - j) % 2 == 0) ? Real(1) : Real(-1);
    forward += sign * c * eval_L(xm + j * h, p);
    // Backward difference: sum_j (-1)^j C(order,j) f(M - j h).
    const Real bsign = (j % 2 == 0) ? Real(1) : Real(-1);
    backward += bsign * c * eval_L(xm - j * h, p);
  }
  const Real scale = ipow(h, order);
  return abs(forward / scale - backward / scale);
}

Real analytic_jump(std::int64_t M, unsigned k) {
  const Real rm(M);
  return 1 / (ipow(rm, 2 * k) * sqrt(rm));
}

}  // namespace xitaylor
