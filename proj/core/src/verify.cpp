// The claim suite behind `verify` and the grid minimiser behind `scan`.
#include "xitaylor/core_functions.hpp"
#include "xitaylor/p_polynomials.hpp"
#include "xitaylor/quadrature.hpp"
#include "xitaylor/report.hpp"
#include "xitaylor/zeta_oracle.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <random>

namespace xitaylor {

namespace {

const std::string kCore = "core-functions";
const std::string kPoly = "p-polynomials";
const std::string kQuad = "quadrature-engine";
const std::string kPipe = "coefficient-pipelines";
const std::string kOracle = "zeta-oracle";

Real inf() { return std::numeric_limits<Real>::infinity(); }

std::vector<Real> grid(const Real& lo, const Real& hi, const Real& step) {
  std::vector<Real> xs;
  const auto count = static_cast<long long>(floor((hi - lo) / step + Real(1e-9)));
  xs.reserve(static_cast<std::size_t>(count + 1));
  for (long long i = 0; i <= count; ++i) xs.push_back(lo + i * step);
  return xs;
}

// A claim that a minimum is non-negative.
Claim nonnegative_claim(std::string id, const std::string& module, std::string anchor, const Real& min_value,
                        const Real& where) {
  Claim c{std::move(id), module, std::move(anchor), false, 0, 0, {}};
  c.residual = min_value < 0 ? -min_value : Real(0);
  c.bound = 0;
  c.passed = min_value >= 0;
  c.detail = "min=" + to_decimal(min_value, 12) + " at x=" + to_decimal(where, 8);
  return c;
}

Claim bounded_claim(std::string id, const std::string& module, std::string anchor, const Real& residual,
                    const Real& bound, std::string detail = {}) {
  Claim c{std::move(id), module, std::move(anchor), false, 0, 0, {}};
  c.residual = residual;
  c.bound = bound;
  c.passed = residual <= bound;
  c.detail = std::move(detail);
  return c;
}

// ---------------------------------------------------------------- core ----

void core_claims(const RunConfig&, std::vector<Claim>& out) {
  const auto xs = grid(Real(1), Real(10), Real(1e-2));
  const std::vector<unsigned> even_tk{0, 2, 4, 6, 8, 10, 12};

  Real worst_decomp = 0;
  Real min_L = inf(), min_L_at = 0;
  Real min_B = inf(), min_B_at = 0;
  Real min_pair = inf(), min_pair_at = 0;
  Real worst_growth = -inf(), worst_growth_at = 0;
  Real worst_v0 = 0;
  for (const Real& x : xs) {
    const Real b = eval_B(x);
    if (b < min_B) min_B = b, min_B_at = x;
    const auto M = WindowIndex::containing(x).M;
    for (unsigned tk : even_tk) {
      const LParam p{tk};
      const Real l = eval_L(x, p);
      const Real d = eval_L_decomposed(x, p);
      worst_decomp = std::max(worst_decomp, abs(l - d) / std::max(Real(1), abs(l)));
      if (l < min_L) min_L = l, min_L_at = x;
      for (std::int64_t n = 1; n <= M - 1; ++n) {
        const Real uv = eval_U(x, n, p) + eval_V(x, n, p);
        if (uv < min_pair) min_pair = uv, min_pair_at = x;
      }
      if (x >= euler_e()) {
        const Real slack = abs(l) - bound_L(x, tk / 2);
        if (slack > worst_growth) worst_growth = slack, worst_growth_at = x;
      }
      const Real v0 = eval_V(x, 0, p);
      const Real v0r = eval_V0_reduced(x, p);
      worst_v0 = std::max(worst_v0, abs(v0 - v0r) / std::max(abs(v0r), std::numeric_limits<Real>::min()));
    }
  }
  out.push_back(bounded_claim("L-as-UV", kCore, "L = sum of U and V terms", worst_decomp, Real(1e-12),
                              "max relative residual over x in [1,10] step 1e-2, even 2k <= 12"));
  out.push_back(nonnegative_claim("L-nonnegative", kCore, "pointwise sign", min_L, min_L_at));
  out.push_back(nonnegative_claim("B-nonnegative", kCore, "pointwise sign", min_B, min_B_at));
  out.push_back(nonnegative_claim("UV-pair-nonnegative", kCore, "U + V >= 0 for n < M", min_pair, min_pair_at));
  out.push_back(bounded_claim("L-growth-bound", kCore, "|L| <= 2x log^2k x",
                              std::max(worst_growth, Real(0)), Real(0),
                              "max |L| - 2x log(x)^{2k} = " + to_decimal(worst_growth, 8)));
  out.push_back(bounded_claim("V0-reduced-form", kCore, "V at n = 0", worst_v0, Real(1e-14),
                              "max relative difference of V(x;0,k) and its reduced form"));

  Real min_U = inf(), min_U_at = 0;
  for (std::int64_t M = 1; M <= 8; ++M) {
    for (const Real& x : grid(Real(M), Real(M + 1), Real(1e-3))) {
      for (unsigned tk : even_tk) {
        const Real u = eval_U(x, M, LParam{tk});
        if (u < min_U) min_U = u, min_U_at = x;
      }
    }
  }
  out.push_back(nonnegative_claim("UM-nonnegative", kCore, "U(x;M,k) >= 0", min_U, min_U_at));

  // Lower orders: the mismatch must shrink with h; order 2k: it must approach
  // the analytic jump within 5%.
  bool smooth_ok = true;
  Real worst_jump_rel = 0;
  std::string detail;
  const Real h(1e-4);
  for (unsigned k = 1; k <= 2; ++k) {
    for (std::int64_t M = 2; M <= 4; ++M) {
      for (unsigned order = 1; order < 2 * k; ++order) {
        const Real a = smoothness_probe(M, k, order, h);
        const Real b = smoothness_probe(M, k, order, h / 2);
        if (!(b <= Real(0.6) * a || b < Real(1e-25))) {
          smooth_ok = false;
          detail += "no decay k=" + std::to_string(k) + " M=" + std::to_string(M) + " order=" +
                    std::to_string(order) + "; ";
        }
      }
      const Real jump = analytic_jump(M, k);
      const Real probe = smoothness_probe(M, k, 2 * k, h);
      worst_jump_rel = std::max(worst_jump_rel, abs(probe - jump) / jump);
    }
  }
  Claim sm = bounded_claim("L-smoothness", kCore, "smoothness at integers", worst_jump_rel, Real(0.05),
                           detail.empty() ? "orders < 2k decay with h; order 2k matches M^{-2k-1/2}" : detail);
  sm.passed = sm.passed && smooth_ok;
  out.push_back(sm);
}

// ----------------------------------------------------------- p family ----

void poly_claims(const RunConfig& cfg, std::vector<Claim>& out) {
  auto recurrence = [&cfg](unsigned n) {
    PPolynomial p = p_by_recurrence(n);
    if (cfg.perturb_coefficient && n == 2) {
      std::vector<BigInt> c = p.coeffs();
      c[1] += 1;
      p = PPolynomial(n, std::move(c));
    }
    return p;
  };

  const std::vector<std::vector<int>> table{{1}, {1, 4}, {1, 24, 16}, {1, 124, 240, 64}};
  unsigned mismatches = 0;
  for (unsigned n = 0; n < table.size(); ++n) {
    const PPolynomial p = recurrence(n);
    for (unsigned m = 0; m < table[n].size(); ++m) {
      if (p[m] != table[n][m]) ++mismatches;
    }
  }
  out.push_back(bounded_claim("p-listed-polynomials", kPoly, "p(x;0..3)", Real(mismatches),
                              Real(0), "coefficient mismatches against p(x;0..3)"));

  unsigned rep_mismatch = 0;
  for (unsigned n = 0; n <= 12; ++n) {
    if (recurrence(n).coeffs() != p_by_binomial(n).coeffs()) ++rep_mismatch;
  }
  out.push_back(bounded_claim("p-recurrence-equals-binomial", kPoly, "coefficient recurrence",
                              Real(rep_mismatch), Real(0), "n = 0..12, exact integer comparison"));

  Real worst_exp = 0;
  const std::vector<Real> xs{Real(-10), -pi(), Real(-1), Real(0), Real(0.5), Real(3), Real(10)};
  for (unsigned n = 0; n <= 8; ++n) {
    const PPolynomial p = recurrence(n);
    for (const Real& x : xs) {
      const Real direct = p_eval(p, x);
      const Real series = p_eval_exponential(n, x, Real(1e-12)).value;
      worst_exp = std::max(worst_exp, abs(series - direct) / std::max(Real(1), abs(direct)));
    }
  }
  out.push_back(bounded_claim("p-exponential-form", kPoly, "exponential series", worst_exp,
                              Real(1e-11), "max relative difference, n <= 8"));

  Real worst_def = 0;
  for (unsigned n = 0; n <= 6; ++n) {
    const PPolynomial p = recurrence(n);
    const PPolynomial next = recurrence(n + 1);
    const std::vector<BigInt> dp = p.derivative_coeffs();
    for (const Real& x : grid(Real(0.1), Real(5), Real(0.1))) {
      const Real y = -pi() * x * x;
      const Real rhs = p_eval(p, y) * (1 + 4 * y) + 4 * y * poly_eval(dp, y);
      const Real lhs = p_eval(next, y);
      worst_def = std::max(worst_def, abs(lhs - rhs) / std::max(Real(1), abs(lhs)));
    }
  }
  out.push_back(bounded_claim("p-defining-recurrence", kPoly, "conjugated derivative", worst_def,
                              Real(1e-10), "relative residual, x in [0.1,5] step 0.1, n <= 6"));

  Real min_p2 = inf(), min_p2_at = 0;
  for (const Real& x : grid(Real(1), Real(20), Real(1e-3))) {
    const Real m = p2_margin(x);
    if (m < min_p2) min_p2 = m, min_p2_at = x;
  }
  out.push_back(nonnegative_claim("p2-margin-nonnegative", kPoly, "p(-pi x^2;2)/4 - 1", min_p2, min_p2_at));

  const P2Expansion ex = p2_expansion();
  Real worst_ex = 0;
  for (const Real& x : grid(Real(0), Real(20), Real(0.25))) {
    worst_ex = std::max(worst_ex, abs(ex.eval(x) - p2_margin(x)) / std::max(Real(1), abs(p2_margin(x))));
  }
  Claim c = bounded_claim("p2-expansion", kPoly, "expansion in x^2 - 1", worst_ex, Real(1e-25),
                          "c0=" + to_decimal(ex.c0, 12) + " c1=" + to_decimal(ex.c1, 12) + " c2=" + to_decimal(ex.c2, 12));
  c.passed = c.passed && ex.c0 > 0 && ex.c1 > 0 && ex.c2 > 0;
  out.push_back(c);

  unsigned identity_failures = 0;
  for (unsigned m = 1; m <= 30; ++m) {
    for (unsigned k = 0; k + 1 <= m; ++k) {
      if (!check_binomial_identity(m, k)) ++identity_failures;
    }
  }
  out.push_back(bounded_claim("binomial-identity", kPoly, "binomial identity",
                              Real(identity_failures), Real(0), "all 0 <= k < m <= 30"));
}

// ---------------------------------------------------------- quadrature ----

void quadrature_claims(const RunConfig&, std::vector<Claim>& out) {
  const auto gauss = IntegrandSpec::custom([](const Real& x) { return PointEval{exp(-pi() * x * x), 0}; },
                                           Real(-1), Real(1));
  const QuadratureResult g = integrate_piecewise(gauss, Real(1e-25));
  const Real oracle = boost::math::erf(sqrt(pi()));
  out.push_back(bounded_claim("gaussian-piece-vs-erf", kQuad, "Gaussian piece of a_0", abs(g.value - oracle),
                              g.abs_error_bound, "erf(sqrt(pi)) oracle"));

  bool panels_ok = true;
  for (unsigned tk : {0u, 2u, 5u}) {
    const QuadratureResult r = integrate_piecewise(IntegrandSpec::L_route(tk), Real(1e-15));
    for (const auto& [a, b] : r.panels) {
      if (floor(a) + 1 < b) panels_ok = false;
    }
  }
  out.push_back(bounded_claim("panels-respect-integers", kQuad, "unit windows", Real(panels_ok ? 0 : 1),
                              Real(0)));

  // Brute-force tail on [4, 12] against the majorant.
  const auto tail_fn = IntegrandSpec::custom(
      [](const Real& x) { return PointEval{exp(-pi() * x * x) / sqrt(x) * eval_L(x, LParam{0}), 0}; }, Real(4),
      Real(12));
  const QuadratureResult t = integrate_piecewise(tail_fn, Real(1e-40));
  const Real majorant = tail_bound_L(Real(4), 0);
  out.push_back(bounded_claim("tail-bound-dominates", kQuad, "tail majorant",
                              abs(t.value) + t.abs_error_bound, majorant,
                              "brute-force tail on [4,12] vs majorant"));
}

// ----------------------------------------------------------- pipelines ----

void pipeline_claims(const RunConfig& cfg, std::vector<Claim>& out, std::vector<CoefficientRecord>& coeffs) {
  const Real tol = cfg.tol;
  const Real itol = cfg.inequality_tol;

  const A0Forms forms = a0_forms(itol);
  out.push_back(bounded_claim("a0-forms-agree", kPipe, "two forms of a_0",
                              abs(forms.b_form.value - forms.theta_form.value),
                              forms.b_form.abs_error_bound + forms.theta_form.abs_error_bound));
  coeffs.push_back(forms.b_form);

  // Route agreement, k = 1..6, routes theta, L, p:1..3.
  std::map<unsigned, std::vector<CoefficientRecord>> by_k;
  Real worst_excess = -inf();
  Real worst_bound = 0;
  for (unsigned k = 1; k <= 6; ++k) {
    by_k[k].push_back(ak_via_theta(k, itol));
    by_k[k].push_back(ak_via_L(k, itol));
    for (unsigned n = 1; n <= 3; ++n) by_k[k].push_back(ak_via_p(k, n, itol));
    const auto& recs = by_k[k];
    for (std::size_t i = 0; i < recs.size(); ++i) {
      worst_bound = std::max(worst_bound, recs[i].abs_error_bound);
      for (std::size_t j = i + 1; j < recs.size(); ++j) {
        const Real excess = abs(recs[i].value - recs[j].value) - (recs[i].abs_error_bound + recs[j].abs_error_bound);
        worst_excess = std::max(worst_excess, excess);
      }
    }
    coeffs.insert(coeffs.end(), recs.begin(), recs.end());
  }
  Claim ra = bounded_claim("route-agreement", kPipe, "route agreement", std::max(worst_excess, Real(0)),
                           Real(0), "max |difference| - combined bound = " + to_decimal(worst_excess, 6) +
                                        ", max bound = " + to_decimal(worst_bound, 6));
  ra.passed = ra.passed && worst_bound <= Real(1e-10);
  out.push_back(ra);

  // Positivity and monotonicity on the L route (a_0 from the B form).
  std::vector<CoefficientRecord> chain{forms.b_form};
  for (unsigned k = 1; k <= 6; ++k) chain.push_back(by_k[k][1]);
  Real worst_pos = inf();
  for (const auto& r : chain) worst_pos = std::min(worst_pos, r.value - r.abs_error_bound);
  Claim pos = bounded_claim("a-positive", kPipe, "a_k > 0", worst_pos > 0 ? Real(0) : -worst_pos, Real(0),
                            "min (a_k - bound) over k <= 6 = " + to_decimal(worst_pos, 6));
  pos.passed = worst_pos > 0;
  out.push_back(pos);

  Real worst_mono = inf();
  for (unsigned k = 0; k + 1 < chain.size(); ++k) {
    const Real margin = chain[k].value - chain[k + 1].value - (chain[k].abs_error_bound + chain[k + 1].abs_error_bound);
    worst_mono = std::min(worst_mono, margin);
  }
  Claim mono = bounded_claim("a-decreasing", kPipe, "a_k > a_{k+1}", worst_mono > 0 ? Real(0) : -worst_mono,
                             Real(0), "min margin over k <= 5 = " + to_decimal(worst_mono, 6));
  mono.passed = worst_mono > 0;
  out.push_back(mono);

  Real each_excess = -inf();
  for (unsigned n = 1; n <= 3; ++n) {
    for (unsigned tk : {0u, 2u, 4u}) {
      const IdentityCheck c = verify_each_n(n, tk, tol);
      each_excess = std::max(each_excess, c.residual - c.bound);
    }
  }
  out.push_back(bounded_claim("each-n-change-of-variables", kPipe, "substitution per n",
                              std::max(each_excess, Real(0)), Real(0),
                              "max residual - bound = " + to_decimal(each_excess, 6)));

  Real ibp_excess = -inf();
  for (int c = 1; c <= 2; ++c) {
    for (unsigned m = 0; m <= 2; ++m) {
      for (unsigned n = 0; n <= 2; ++n) {
        const IdentityCheck r = verify_int_by_parts(Real(c), m, n, tol);
        ibp_excess = std::max(ibp_excess, r.residual - r.bound);
      }
    }
  }
  out.push_back(bounded_claim("integration-by-parts", kPipe, "integration by parts",
                              std::max(ibp_excess, Real(0)), Real(0),
                              "max residual - bound = " + to_decimal(ibp_excess, 6)));

  Real anti_excess = -inf();
  Real anti_worst = 0;
  for (unsigned k = 0; k <= 2; ++k) {
    for (const auto& [x, a, b] : std::vector<std::tuple<Real, Real, Real>>{
             {Real(1), Real(1), Real(2)}, {Real(3), Real(1), Real(2)}, {Real(2.5), Real(0.5), Real(4)}}) {
      const IdentityCheck r = verify_antiderivative(x, k, a, b);
      anti_excess = std::max(anti_excess, r.residual - r.bound);
      anti_worst = std::max(anti_worst, r.residual);
    }
  }
  Claim anti = bounded_claim("antiderivatives", kPipe, "closed-form antiderivatives", std::max(anti_excess, Real(0)),
                             Real(0), "max residual = " + to_decimal(anti_worst, 6));
  anti.passed = anti.passed && anti_worst <= Real(1e-11);
  out.push_back(anti);

  bool wallis_ok = true;
  Rational prev = wallis(0).value;
  const Rational half_pi_upper = Rational(BigInt("15707963267948966192313216916397514421"),
                                          BigInt("10000000000000000000000000000000000000"));
  if (prev != 1) wallis_ok = false;
  for (unsigned N = 1; N <= 200; ++N) {
    const Rational w = wallis(N).value;
    if (!(w > prev) || !(w < half_pi_upper)) wallis_ok = false;
    prev = w;
  }
  const Real gap1000 = pi() / 2 - to_real(wallis(1000).value);
  out.push_back(bounded_claim("wallis-bounds", kPipe, "Wallis partial products",
                              wallis_ok ? gap1000 : inf(), Real(5e-4),
                              "strictly increasing below pi/2 for N <= 200; pi/2 - Wallis(1000) = " +
                                  to_decimal(gap1000, 8)));

  const ProofConstant pc = proof_constant();
  Claim pcc = bounded_claim("a0-gt-a1-constant", kPipe, "constant in a_0 > a_1", Real(0), Real(0),
                            "computed " + pc.computed.str() + ", printed " + pc.printed.str() +
                                (pc.erratum ? " (erratum: printed value differs)" : ""));
  pcc.passed = pc.computed == Rational(65, 9) && pc.exceeds_five;
  out.push_back(pcc);
}

// -------------------------------------------------------------- oracle ----

void oracle_claims(const RunConfig& cfg, std::vector<Claim>& out, const std::vector<CoefficientRecord>& coeffs) {
  const XiValue closed = a0_closed_form();
  const CoefficientRecord a0 = coeffs.empty() ? a0_via_theta(cfg.inequality_tol) : coeffs.front();
  out.push_back(bounded_claim("a0-closed-form", kOracle, "closed form of a_0",
                              abs(a0.value - closed.value), Real(1e-9),
                              "closed form " + to_decimal(closed.value, 20)));

  const OracleFit fit = oracle_coefficients(4, Real(1e-12));
  Real excess = -inf();
  for (unsigned k = 1; k <= 4; ++k) {
    const CoefficientRecord rec = ak_via_L(k, cfg.inequality_tol);
    const auto& oc = fit.coefficients[k];
    excess = std::max(excess, abs(rec.value - oc.value) - (rec.abs_error_bound + oc.est_error));
  }
  excess = std::max(excess, abs(fit.coefficients[0].value - closed.value) - (fit.coefficients[0].est_error + closed.est_error));
  out.push_back(bounded_claim("oracle-agreement", kOracle, "Taylor coefficients of xi",
                              std::max(excess, Real(0)), Real(0),
                              "max |route - oracle| - combined estimate = " + to_decimal(excess, 6)));

  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  Real worst = -inf();
  for (int i = 0; i < 50; ++i) {
    const Real t(dist(rng));
    const XiValue p = xi_critical(t);
    const XiValue m = xi_critical(-t);
    worst = std::max(worst, p.imag_residue - p.est_error);
    worst = std::max(worst, abs(p.value - m.value) - (p.est_error + m.est_error));
  }
  out.push_back(bounded_claim("xi-real-and-even", kOracle, "xi real and even on the line", std::max(worst, Real(0)), Real(0)));

  const Complex s(Real(0.3), Real(0.4));
  const ComplexEstimate l1 = completed_zeta(s, Real(1e-30));
  const ComplexEstimate l2 = completed_zeta(Complex(1) - s, Real(1e-30));
  const Real fe = cabs(-(s * (Complex(1) - s)) * (l1.value - l2.value));
  out.push_back(bounded_claim("functional-equation", kOracle, "functional equation", fe,
                              cabs(s * (Complex(1) - s)) * (l1.error + l2.error), "at s = 0.3 + 0.4i"));
}

bool selected(const RunConfig& cfg, const std::string& module) {
  return cfg.only.empty() || std::find(cfg.only.begin(), cfg.only.end(), module) != cfg.only.end();
}

}  // namespace

const std::vector<std::string>& verification_modules() {
  static const std::vector<std::string> mods{kCore, kPoly, kQuad, kPipe, kOracle};
  return mods;
}

std::size_t VerificationReport::passed() const {
  return static_cast<std::size_t>(std::count_if(claims.begin(), claims.end(), [](const Claim& c) { return c.passed; }));
}

std::size_t VerificationReport::failed() const { return claims.size() - passed(); }

VerificationReport run_verification(const RunConfig& cfg) {
  VerificationReport rep;
  if (selected(cfg, kCore)) core_claims(cfg, rep.claims);
  if (selected(cfg, kPoly)) poly_claims(cfg, rep.claims);
  if (selected(cfg, kQuad)) quadrature_claims(cfg, rep.claims);
  if (selected(cfg, kPipe)) pipeline_claims(cfg, rep.claims, rep.coefficients);
  if (selected(cfg, kOracle)) oracle_claims(cfg, rep.claims, rep.coefficients);
  return rep;
}

ScanResult run_scan(const RunConfig& cfg) {
  std::function<Real(const Real&)> f;
  const LParam p = LParam::from_k(cfg.scan_k);
  const std::string& target = cfg.scan_target;
  if (target == "L") {
    f = [p](const Real& x) { return eval_L(x, p); };
  } else if (target == "B") {
    f = [](const Real& x) { return eval_B(x); };
  } else if (target == "U") {
    f = [p](const Real& x) { return eval_U(x, WindowIndex::containing(x).M, p); };
  } else if (target == "UV") {
    f = [p](const Real& x) {
      const auto M = WindowIndex::containing(x).M;
      Real m = inf();
      for (std::int64_t n = 1; n <= M - 1; ++n) m = std::min(m, eval_U(x, n, p) + eval_V(x, n, p));
      return m;
    };
  } else if (target == "p2") {
    f = [](const Real& x) { return p2_margin(x); };
  } else {
    throw ConfigError("scan: unknown target '" + target + "' (expected L, B, U, UV or p2)");
  }
  ScanResult res{target, inf(), cfg.grid_lo, 0};
  for (const Real& x : grid(cfg.grid_lo, cfg.grid_hi, cfg.step)) {
    const Real v = f(x);
    ++res.points;
    if (v < res.min_value) res.min_value = v, res.argmin = x;
  }
  return res;
}

}  // namespace xitaylor
