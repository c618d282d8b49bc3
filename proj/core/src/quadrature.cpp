#include "xitaylor/quadrature.hpp"

#include "xitaylor/core_functions.hpp"
#include "xitaylor/p_polynomials.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <stdexcept>

namespace xitaylor {

namespace {

constexpr unsigned kRuleNodes = 20;
constexpr int kMaxCutoff = 400;

struct WindowResult {
  Real value = 0;
  Real estimate = 0;
  Real rounding = 0;
  bool converged = true;
  std::vector<std::pair<Real, Real>> panels;
};

struct RuleValue {
  Real value = 0;
  Real abs_sum = 0;   // sum |w f|, for the rounding allowance
  Real eval_err = 0;  // sum |w| * pointwise error
};

template <class F>
RuleValue apply_rule(const F& f, const Real& a, const Real& b) {
  const Real half = (b - a) / 2;
  const Real mid = (a + b) / 2;
  RuleValue r;
  for (const auto& [node, weight] : gauss_legendre_rule()) {
    const PointEval pe = f(mid + half * node);
    const Real wf = weight * pe.value;
    r.value += wf;
    r.abs_sum += abs(wf);
    r.eval_err += weight * pe.abs_error;
  }
  r.value *= half;
  r.abs_sum *= half;
  r.eval_err *= half;
  return r;
}

// Adaptive bisection on one window. Panels are processed left to right so the
// accumulation order is fixed.
template <class F>
WindowResult integrate_window(const F& f, const Real& a, const Real& b, const Real& tol_per_length,
                              std::size_t max_panels) {
  WindowResult out;
  struct Pending {
    Real a, b;
    RuleValue whole;
  };
  std::vector<Pending> stack;
  stack.push_back({a, b, apply_rule(f, a, b)});
  std::size_t used = 1;
  const Real round_factor = 64 * epsilon();

  while (!stack.empty()) {
    Pending p = std::move(stack.back());
    stack.pop_back();
    const Real mid = (p.a + p.b) / 2;
    RuleValue left = apply_rule(f, p.a, mid);
    RuleValue right = apply_rule(f, mid, p.b);
    const Real refined = left.value + right.value;
    const Real est = abs(p.whole.value - refined);
    const Real budget = tol_per_length * (p.b - p.a);
    if (est <= budget || used >= max_panels) {
      if (est > budget) out.converged = false;
      out.value += refined;
      out.estimate += est;
      out.rounding += round_factor * (left.abs_sum + right.abs_sum) + left.eval_err + right.eval_err;
      out.panels.emplace_back(p.a, mid);
      out.panels.emplace_back(mid, p.b);
      continue;
    }
    used += 1;
    // Right half goes on the stack first so the left half is processed next.
    stack.push_back({mid, p.b, std::move(right)});
    stack.push_back({p.a, mid, std::move(left)});
  }
  return out;
}

std::vector<std::pair<Real, Real>> windows_between(const Real& lower, const Real& upper) {
  std::vector<std::pair<Real, Real>> w;
  Real a = lower;
  while (a < upper) {
    Real b = floor(a) + 1;
    if (b > upper) b = upper;
    w.emplace_back(a, b);
    a = b;
  }
  return w;
}

Real theta_bound(const Real& x, unsigned N) {
  // sum_{n>N} e^{-pi n^2 x} <= e^{-pi (N+1)^2 x} / (1 - e^{-pi (2N+3) x})
  const Real n1(N + 1);
  return exp(-pi() * n1 * n1 * x) / (1 - exp(-pi() * (2 * N + 3) * x));
}

PointEval theta_integrand(unsigned two_kappa, unsigned theta_terms, const Real& x) {
  const ThetaSum th = theta_terms == 0 ? theta_sum(x, exp(-pi() * x) * Real(1e-40)) : theta_sum_fixed(x, theta_terms);
  const Real xw = pow(x, Real(-0.75));
  Real weight;
  Real abs_weight;
  if (two_kappa == 0) {
    weight = xw / 2;
    abs_weight = weight;
  } else {
    const Real h = log(x) / 2;
    const Real a = ipow(h, two_kappa - 2) * inv_factorial(two_kappa - 2);
    const Real b = ipow(h, two_kappa) * inv_factorial(two_kappa) / 4;
    weight = 2 * xw * (a - b);
    abs_weight = 2 * xw * (abs(a) + abs(b));
  }
  return PointEval{weight * th.value, abs_weight * th.remainder_bound};
}

const PPolynomial& cached_p(unsigned n) {
  static const std::vector<PPolynomial> table = [] {
    std::vector<PPolynomial> t;
    for (unsigned i = 0; i <= 16; ++i) t.push_back(p_by_recurrence(i));
    return t;
  }();
  if (n < table.size()) return table[n];
  throw std::domain_error("p_shifted: shift too large (max 16)");
}

Real gaussian_factor(const Real& x) { return exp(-pi() * x * x) / sqrt(x); }

}  // namespace

std::string to_string(IntegrandKind kind) {
  switch (kind) {
    case IntegrandKind::theta_direct: return "theta_direct";
    case IntegrandKind::L_route: return "L_route";
    case IntegrandKind::p_shifted: return "p_shifted";
    case IntegrandKind::B_route: return "B_route";
    case IntegrandKind::custom: return "custom";
  }
  return "unknown";
}

IntegrandSpec IntegrandSpec::theta(unsigned two_kappa, unsigned theta_terms) {
  if (two_kappa % 2 != 0 || two_kappa == 1) throw std::domain_error("theta integrand: two_kappa must be even");
  IntegrandSpec s;
  s.kind = IntegrandKind::theta_direct;
  s.two_kappa = two_kappa;
  s.theta_terms = theta_terms;
  return s;
}

IntegrandSpec IntegrandSpec::L_route(unsigned two_kappa) {
  IntegrandSpec s;
  s.kind = IntegrandKind::L_route;
  s.two_kappa = two_kappa;
  return s;
}

IntegrandSpec IntegrandSpec::p_shifted(unsigned two_kappa, unsigned shift) {
  IntegrandSpec s;
  s.kind = IntegrandKind::p_shifted;
  s.two_kappa = two_kappa;
  s.shift = shift;
  return s;
}

IntegrandSpec IntegrandSpec::B_route() {
  IntegrandSpec s;
  s.kind = IntegrandKind::B_route;
  return s;
}

IntegrandSpec IntegrandSpec::custom(std::function<PointEval(const Real&)> fn, Real lower, std::optional<Real> upper,
                                    std::function<Real(const Real&)> tail) {
  IntegrandSpec s;
  s.kind = IntegrandKind::custom;
  s.custom_fn = std::move(fn);
  s.lower = lower;
  s.upper = upper;
  s.custom_tail = std::move(tail);
  return s;
}

const std::vector<std::pair<Real, Real>>& gauss_legendre_rule() {
  static const std::vector<std::pair<Real, Real>> rule = [] {
    std::vector<std::pair<Real, Real>> r;
    const unsigned n = kRuleNodes;
    for (unsigned i = 1; i <= n; ++i) {
      Real x = cos(pi() * (Real(i) - Real(0.25)) / (Real(n) + Real(0.5)));
      Real dp = 0;
      for (int iter = 0; iter < 100; ++iter) {
        Real p0 = 1;
        Real p1 = x;
        for (unsigned k = 2; k <= n; ++k) {
          const Real pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const Real dx = p1 / dp;
        x -= dx;
        if (abs(dx) <= 4 * epsilon()) break;
      }
      // Recompute the derivative at the converged node.
      Real p0 = 1;
      Real p1 = x;
      for (unsigned k = 2; k <= n; ++k) {
        const Real pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      r.emplace_back(x, 2 / ((1 - x * x) * dp * dp));
    }
    return r;
  }();
  return rule;
}

ThetaSum theta_sum_fixed(const Real& x, unsigned terms) {
  Real value = 0;
  for (unsigned n = 1; n <= terms; ++n) {
    const Real rn(n);
    value += exp(-pi() * rn * rn * x);
  }
  return ThetaSum{value, theta_bound(x, terms), terms};
}

ThetaSum theta_sum(const Real& x, const Real& tol) {
  if (!(x >= 1)) throw std::domain_error("theta_sum: x must be >= 1");
  if (!(tol > 0)) throw std::domain_error("theta_sum: tol must be > 0");
  unsigned N = 1;
  while (theta_bound(x, N) > tol) ++N;
  return theta_sum_fixed(x, N);
}

PointEval evaluate_integrand(const IntegrandSpec& spec, const Real& x) {
  switch (spec.kind) {
    case IntegrandKind::theta_direct:
      return theta_integrand(spec.two_kappa, spec.theta_terms, x);
    case IntegrandKind::L_route:
      return PointEval{gaussian_factor(x) * eval_L(x, LParam{spec.two_kappa}), 0};
    case IntegrandKind::p_shifted: {
      const Real pv = p_eval(cached_p(spec.shift), -pi() * x * x);
      const Real sign = ((spec.shift + spec.two_kappa) % 2 == 0) ? Real(1) : Real(-1);
      return PointEval{sign * gaussian_factor(x) * pv / ipow(Real(2), spec.shift) * eval_L(x, LParam{spec.two_kappa}),
                       0};
    }
    case IntegrandKind::B_route:
      return PointEval{gaussian_factor(x) * eval_B(x), 0};
    case IntegrandKind::custom:
      if (!spec.custom_fn) throw std::invalid_argument("custom integrand without a function");
      return spec.custom_fn(x);
  }
  throw std::logic_error("unknown integrand kind");
}

Real gaussian_tail_majorant(const Real& X, const Real& c, unsigned t, const Real& rate, unsigned order) {
  if (order < 1) throw std::domain_error("gaussian_tail_majorant: order must be >= 1");
  if (t > 0 && !(X >= euler_e())) throw std::domain_error("gaussian_tail_majorant: X must be >= e");
  if (!(X > 0)) throw std::domain_error("gaussian_tail_majorant: X must be > 0");
  // log(x)^t <= log(X)^t (x/X)^{t/log X}, then x^{c'} <= X^{c'} e^{c'+ (x-X)/X}
  // and exp(-rate x^q) <= exp(-rate X^q) exp(-rate q X^{q-1} (x - X)).
  const Real lx = log(X);
  const Real cp = t > 0 ? c + Real(t) / lx : c;
  const Real cplus = std::max(cp, Real(0));
  const Real slope = rate * order * pow(X, Real(order - 1)) - cplus / X;
  if (!(slope > 0)) return std::numeric_limits<Real>::infinity();
  return ipow(lx, t) * pow(X, cp) * exp(-rate * pow(X, Real(order))) / slope;
}

Real tail_bound_L(const Real& X, unsigned two_kappa) {
  if (!(X >= euler_e())) throw std::domain_error("tail_bound_L: X must be >= e");
  return 2 * gaussian_tail_majorant(X, Real(0.5), two_kappa, pi(), 2);
}

Real tail_bound(const IntegrandSpec& spec, const Real& X) {
  switch (spec.kind) {
    case IntegrandKind::theta_direct: {
      // theta(x) <= e^{-pi x} / (1 - e^{-3 pi}) for x >= 1.
      const Real theta_factor = 1 / (1 - exp(-3 * pi()));
      const unsigned t = spec.two_kappa;
      if (t == 0) return theta_factor * gaussian_tail_majorant(X, Real(-0.75), 0, pi(), 1) / 2;
      const Real first = inv_factorial(t - 2) / ipow(Real(2), t - 2) * gaussian_tail_majorant(X, Real(-0.75), t - 2, pi(), 1);
      const Real second = inv_factorial(t) / ipow(Real(2), t) / 4 * gaussian_tail_majorant(X, Real(-0.75), t, pi(), 1);
      return 2 * theta_factor * (first + second);
    }
    case IntegrandKind::L_route:
      return tail_bound_L(X, spec.two_kappa);
    case IntegrandKind::p_shifted: {
      // |p(-pi x^2; n)| <= p(pi; n) x^{2n} for x >= 1 (coefficients are nonnegative).
      const Real pmax = p_eval(cached_p(spec.shift), pi()) / ipow(Real(2), spec.shift);
      return pmax * 2 * gaussian_tail_majorant(X, Real(0.5) + 2 * spec.shift, spec.two_kappa, pi(), 2);
    }
    case IntegrandKind::B_route:
      // 0 <= B(x) <= 2 sqrt(x)
      return 2 * gaussian_tail_majorant(X, Real(0), 0, pi(), 2);
    case IntegrandKind::custom:
      if (!spec.custom_tail) throw std::invalid_argument("custom integrand on [c, inf) needs a tail bound");
      return spec.custom_tail(X);
  }
  throw std::logic_error("unknown integrand kind");
}

Real choose_cutoff(unsigned two_kappa, const Real& tol) {
  if (!(tol > 0)) throw std::domain_error("choose_cutoff: tol must be > 0");
  for (int X = 3; X <= kMaxCutoff; ++X) {
    if (tail_bound_L(Real(X), two_kappa) <= tol / 10) return Real(X);
  }
  throw NotConverged("choose_cutoff: no cutoff up to " + std::to_string(kMaxCutoff));
}

QuadratureResult integrate_piecewise(const IntegrandSpec& spec, const Real& tol, const QuadratureOptions& opts) {
  if (!(tol > 0)) throw std::domain_error("integrate_piecewise: tol must be > 0");
  (void)gauss_legendre_rule();

  QuadratureResult result;
  const Real lower = spec.kind == IntegrandKind::custom ? spec.lower : Real(1);
  Real upper;
  Real interval_tol = tol;
  if (spec.kind == IntegrandKind::custom && spec.upper) {
    upper = *spec.upper;
    if (!(upper > lower)) throw std::domain_error("integrate_piecewise: upper must exceed lower");
  } else {
    interval_tol = tol * 9 / 10;
    const Real tail_budget = tol / 10;
    int X = std::max(3, static_cast<int>(floor(lower)) + 1);
    for (; X <= kMaxCutoff; ++X) {
      if (tail_bound(spec, Real(X)) <= tail_budget) break;
    }
    if (X > kMaxCutoff) throw NotConverged("integrate_piecewise: tail budget not met by any cutoff");
    upper = Real(X);
    result.tail_bound = tail_bound(spec, upper);
  }
  result.cutoff = upper;

  const auto windows = windows_between(lower, upper);
  const Real tol_per_length = interval_tol / (upper - lower);
  auto f = [&spec](const Real& x) { return evaluate_integrand(spec, x); };

  std::vector<WindowResult> parts(windows.size());
  if (opts.parallel && windows.size() > 1) {
    std::vector<std::future<WindowResult>> futures;
    futures.reserve(windows.size());
    for (const auto& [a, b] : windows) {
      futures.push_back(std::async(std::launch::async, [&, a = a, b = b] {
        return integrate_window(f, a, b, tol_per_length, opts.max_panels_per_window);
      }));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) parts[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < windows.size(); ++i) {
      parts[i] = integrate_window(f, windows[i].first, windows[i].second, tol_per_length, opts.max_panels_per_window);
    }
  }

  Real estimate = 0;
  Real rounding = 0;
  for (auto& part : parts) {
    result.value += part.value;
    estimate += part.estimate;
    rounding += part.rounding;
    result.converged = result.converged && part.converged;
    result.panels.insert(result.panels.end(), part.panels.begin(), part.panels.end());
  }
  result.intervals = result.panels.size();
  result.abs_error_bound = estimate + rounding + result.tail_bound;
  if (result.abs_error_bound > tol) result.converged = false;
  return result;
}

}  // namespace xitaylor
