#include "xitaylor/pipelines.hpp"

#include "xitaylor/p_polynomials.hpp"


#include <algorithm>
#include <stdexcept>

namespace xitaylor {

namespace {

QuadratureResult run(const IntegrandSpec& spec, const Real& tol, const char* what,
                     QuadratureOptions opts = {}) {
  QuadratureResult r = integrate_piecewise(spec, tol, opts);
  if (!r.converged) {
    throw NotConverged(std::string(what) + ": quadrature did not reach tol " + to_decimal(tol, 6) +
                       " (bound " + to_decimal(r.abs_error_bound, 6) + ")");
  }
  return r;
}

Real log_scale_for(const Real& c) {
  // log(x/c) <= K log(x) for x >= e when c > 0.
  return c >= 1 ? Real(1) : 1 + log(1 / c);
}

}  // namespace

std::string CoefficientRecord::route_label() const {
  return RouteSpec{route, shift}.label();
}

RouteSpec RouteSpec::parse(const std::string& text) {
  if (text == "theta") return RouteSpec{Route::theta, 0};
  if (text == "L") return RouteSpec{Route::L, 0};
  if (text.rfind("p:", 0) == 0 && text.size() > 2) {
    const std::string digits = text.substr(2);
    if (!std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) ||
        digits.size() > 2) {
      throw std::invalid_argument("bad route shift in '" + text + "'");
    }
    return RouteSpec{Route::p_shifted, static_cast<unsigned>(std::stoul(digits))};
  }
  throw std::invalid_argument("unknown route '" + text + "' (expected theta, L or p:<n>)");
}

std::string RouteSpec::label() const {
  switch (route) {
    case Route::theta: return "theta";
    case Route::L: return "L";
    case Route::p_shifted: return "p:" + std::to_string(shift);
  }
  return "?";
}

A0Forms a0_forms(const Real& tol) {
  if (!(tol > 0)) throw std::domain_error("a0: tol must be > 0");
  A0Forms out;
  const auto gauss = IntegrandSpec::custom(
      [](const Real& x) { return PointEval{exp(-pi() * x * x), 0}; }, Real(-1), Real(1));
  const QuadratureResult g = run(gauss, tol / 2, "a0 gaussian piece");
  const QuadratureResult b = run(IntegrandSpec::B_route(), tol / 2, "a0 B route");
  out.gaussian_piece = g.value;
  out.gaussian_bound = g.abs_error_bound;
  out.b_form = CoefficientRecord{0, Route::theta, 0, g.value + b.value, g.abs_error_bound + b.abs_error_bound};

  const QuadratureResult t = run(IntegrandSpec::theta(0), tol, "a0 theta form");
  out.theta_form = CoefficientRecord{0, Route::theta, 0, 1 - t.value, t.abs_error_bound};
  return out;
}

CoefficientRecord a0_via_theta(const Real& tol) {
  const A0Forms forms = a0_forms(tol);
  const Real diff = abs(forms.b_form.value - forms.theta_form.value);
  const Real allowed = forms.b_form.abs_error_bound + forms.theta_form.abs_error_bound;
  if (diff > allowed) {
    throw std::runtime_error("a0: B-route and theta forms disagree by " + to_decimal(diff, 6));
  }
  return forms.b_form;
}

CoefficientRecord ak_via_theta(unsigned k, const Real& tol) {
  if (k < 1) throw std::domain_error("ak_via_theta: k must be >= 1");
  if (!(tol > 0)) throw std::domain_error("ak_via_theta: tol must be > 0");
  const QuadratureResult r = run(IntegrandSpec::theta(2 * k), tol, "ak_via_theta");
  return CoefficientRecord{k, Route::theta, 0, r.value, r.abs_error_bound};
}

CoefficientRecord ak_via_L(unsigned k, const Real& tol) {
  if (k < 1) throw std::domain_error("ak_via_L: k must be >= 1");
  if (!(tol > 0)) throw std::domain_error("ak_via_L: tol must be > 0");
  const QuadratureResult r = run(IntegrandSpec::L_route(2 * (k - 1)), tol / 4, "ak_via_L");
  return CoefficientRecord{k, Route::L, 0, 4 * r.value, 4 * r.abs_error_bound};
}

CoefficientRecord ak_via_p(unsigned k, unsigned n, const Real& tol) {
  if (k < 1) throw std::domain_error("ak_via_p: k must be >= 1");
  if (!(tol > 0)) throw std::domain_error("ak_via_p: tol must be > 0");
  QuadratureOptions opts;
  if (n % 2 == 1) opts.max_panels_per_window *= 2;
  const QuadratureResult r = run(IntegrandSpec::p_shifted(2 * (k - 1) + n, n), tol / 4, "ak_via_p", opts);
  return CoefficientRecord{k, Route::p_shifted, n, 4 * r.value, 4 * r.abs_error_bound};
}

CoefficientRecord compute_coefficient(unsigned k, const RouteSpec& route, const Real& tol) {
  if (k == 0) return a0_via_theta(tol);
  switch (route.route) {
    case Route::theta: return ak_via_theta(k, tol);
    case Route::L: return ak_via_L(k, tol);
    case Route::p_shifted: return ak_via_p(k, route.shift, tol);
  }
  throw std::logic_error("unknown route");
}

IdentityCheck verify_each_n(unsigned n, unsigned two_kappa, const Real& tol) {
  if (n < 1) throw std::domain_error("verify_each_n: n must be >= 1");
  if (two_kappa % 2 != 0) throw std::domain_error("verify_each_n: two_kappa must be even");
  const Real rn(n);
  const Real rate_lhs = pi() * rn * rn;
  const unsigned t = two_kappa;

  const auto lhs_spec = IntegrandSpec::custom(
      [rate_lhs, t](const Real& x) {
        return PointEval{pow(x, Real(-0.75)) * ipow(log(x) / 2, t) * exp(-rate_lhs * x), 0};
      },
      Real(1), std::nullopt,
      [rate_lhs, t](const Real& X) {
        return gaussian_tail_majorant(X, Real(-0.75), t, rate_lhs, 1) / ipow(Real(2), t);
      });
  const auto rhs_spec = IntegrandSpec::custom(
      [rn, t](const Real& x) {
        return PointEval{2 * ipow(log(rn / x), t) / sqrt(rn) * exp(-pi() * x * x) / sqrt(x), 0};
      },
      rn, std::nullopt,
      [rn, t](const Real& X) { return 2 / sqrt(rn) * gaussian_tail_majorant(X, Real(-0.5), t, pi(), 2); });

  const QuadratureResult lhs = run(lhs_spec, tol, "verify_each_n lhs");
  const QuadratureResult rhs = run(rhs_spec, tol, "verify_each_n rhs");
  return IdentityCheck{lhs.value, rhs.value, abs(lhs.value - rhs.value), lhs.abs_error_bound + rhs.abs_error_bound};
}

IdentityCheck verify_int_by_parts(const Real& c, unsigned m, unsigned n, const Real& tol) {
  if (!(c > 0)) throw std::domain_error("verify_int_by_parts: c must be > 0");
  const Real K = log_scale_for(c);
  const PPolynomial P = p_by_recurrence(n);
  const Real pmax = p_eval(P, pi()) / ipow(Real(2), n);
  const Real sign = n % 2 == 0 ? Real(1) : Real(-1);

  const auto lhs_spec = IntegrandSpec::custom(
      [c, m](const Real& x) {
        return PointEval{exp(-pi() * x * x) / sqrt(x) * ipow(log(x / c), m) * inv_factorial(m), 0};
      },
      c, std::nullopt,
      [m, K](const Real& X) {
        return ipow(K, m) * inv_factorial(m) * gaussian_tail_majorant(X, Real(-0.5), m, pi(), 2);
      });
  const auto rhs_spec = IntegrandSpec::custom(
      [c, m, n, P, sign](const Real& x) {
        const Real pv = p_eval(P, -pi() * x * x) / ipow(Real(2), n);
        return PointEval{exp(-pi() * x * x) / sqrt(x) * sign * pv * ipow(log(x / c), m + n) * inv_factorial(m + n), 0};
      },
      c, std::nullopt,
      [m, n, K, pmax](const Real& X) {
        return pmax * ipow(K, m + n) * inv_factorial(m + n) *
               gaussian_tail_majorant(X, Real(-0.5) + 2 * n, m + n, pi(), 2);
      });

  const QuadratureResult lhs = run(lhs_spec, tol, "verify_int_by_parts lhs");
  const QuadratureResult rhs = run(rhs_spec, tol, "verify_int_by_parts rhs");
  return IdentityCheck{lhs.value, rhs.value, abs(lhs.value - rhs.value), lhs.abs_error_bound + rhs.abs_error_bound};
}

Real antiderivative_single(const Real& z, const Real& x, unsigned k) {
  const Real lg = log(z / x);
  Real sum = 0;
  for (unsigned h = 0; h <= 2 * k; ++h) {
    const Real sign = h % 2 == 0 ? Real(1) : Real(-1);
    sum += sign * ipow(Real(2), h) * ipow(lg, 2 * k - h) * inv_factorial(2 * k - h);
  }
  return 2 * sqrt(z) * sum;
}

Real antiderivative_pair(const Real& z, const Real& x, unsigned k) {
  const Real lg = log(z / x);
  return -sqrt(z) / 2 * (ipow(lg, 2 * k + 2) * inv_factorial(2 * k + 2) - 2 * ipow(lg, 2 * k + 1) * inv_factorial(2 * k + 1));
}

IdentityCheck verify_antiderivative(const Real& x, unsigned k, const Real& a, const Real& b, const Real& tol) {
  if (!(x > 0)) throw std::domain_error("verify_antiderivative: x must be > 0");
  if (!(a > 0) || a > b) throw std::domain_error("verify_antiderivative: need 0 < a <= b");
  if (a == b) return IdentityCheck{};

  const auto single = IntegrandSpec::custom(
      [x, k](const Real& z) {
        return PointEval{ipow(log(z / x), 2 * k) * inv_factorial(2 * k) / sqrt(z), 0};
      },
      a, b);
  const auto pair = IntegrandSpec::custom(
      [x, k](const Real& z) {
        const Real lg = log(z / x);
        const Real l2k = ipow(lg, 2 * k);
        return PointEval{(l2k * inv_factorial(2 * k) - l2k * lg * lg * inv_factorial(2 * k + 2) / 4) / sqrt(z), 0};
      },
      a, b);

  const QuadratureResult q1 = run(single, tol, "verify_antiderivative single");
  const QuadratureResult q2 = run(pair, tol, "verify_antiderivative pair");
  const Real f1 = antiderivative_single(b, x, k) - antiderivative_single(a, x, k);
  const Real f2 = antiderivative_pair(b, x, k) - antiderivative_pair(a, x, k);
  const Real r1 = abs(q1.value - f1);
  const Real r2 = abs(q2.value - f2);
  // Closed forms are evaluated with a handful of roundings each.
  const Real closed_form_err = 64 * epsilon() * (abs(f1) + abs(f2) + 1);
  if (r1 >= r2) return IdentityCheck{q1.value, f1, r1, q1.abs_error_bound + closed_form_err};
  return IdentityCheck{q2.value, f2, r2, q2.abs_error_bound + closed_form_err};
}

WallisValue wallis(unsigned N) {
  Rational product = 1;
  for (unsigned n = 1; n <= N; ++n) {
    const BigInt two_n = 2 * BigInt(n);
    product *= Rational(two_n * two_n, (two_n - 1) * (two_n + 1));
  }
  return WallisValue{N, product};
}

ProofConstant proof_constant() {
  const Rational w1 = wallis(1).value;
  ProofConstant pc;
  pc.computed = 1 + 2 * w1 + Rational(4, 2) * w1 * w1;
  pc.printed = Rational(55, 9);
  pc.erratum = pc.computed != pc.printed;
  pc.exceeds_five = pc.computed - 5 > 0;
  return pc;
}

MonotonicityReport monotonicity_report(unsigned kmax, const Real& tol) {
  if (kmax < 1) throw std::domain_error("monotonicity_report: kmax must be >= 1");
  MonotonicityReport rep;
  rep.coefficients.push_back(a0_via_theta(tol));
  for (unsigned k = 1; k <= kmax + 1; ++k) rep.coefficients.push_back(ak_via_L(k, tol));
  for (unsigned k = 0; k <= kmax; ++k) {
    const auto& a = rep.coefficients[k];
    const auto& b = rep.coefficients[k + 1];
    MonotonicityEntry e;
    e.k = k;
    e.difference = a.value - b.value;
    e.bound = a.abs_error_bound + b.abs_error_bound;
    e.margin = e.difference - e.bound;
    rep.entries.push_back(e);
  }
  rep.constant = proof_constant();
  Real min_margin = std::numeric_limits<Real>::infinity();
  for (int i = 0; i <= 900; ++i) {
    const Real x = 1 + Real(i) / 100;
    min_margin = std::min(min_margin, exp(2 * pi() * x - pi()) - 5);
  }
  rep.exp_margin_min = min_margin;
  return rep;
}

}  // namespace xitaylor
