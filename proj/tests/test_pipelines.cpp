#include "xitaylor/pipelines.hpp"

#include <gtest/gtest.h>

using namespace xitaylor;

namespace {

// a_k computed with mpmath from the derivatives of the completed zeta function at 1/2.
const std::vector<const char*> kA{
    "0.9942415563766282198255475",  "0.02297194431514543753524988", "0.0002469040361406360137806916",
    "1.664710962771054144009517e-6", "7.984453102688274349450541e-9", "2.923205152022192172482429e-11",
    "8.54908009107368991535042e-14",
};
const Real kRefSlack(1e-24);
const Real kTight(1e-20);

void expect_matches_reference(const CoefficientRecord& r) {
  const Real ref = parse_real(kA.at(r.k));
  EXPECT_LE(abs(r.value - ref), r.abs_error_bound + kRefSlack)
      << "k=" << r.k << " route=" << r.route_label() << " value=" << to_decimal(r.value)
      << " bound=" << to_decimal(r.abs_error_bound, 6);
}

}  // namespace

TEST(Pipelines, RouteSpecParsing) {
  EXPECT_EQ(RouteSpec::parse("theta").route, Route::theta);
  EXPECT_EQ(RouteSpec::parse("L").route, Route::L);
  const RouteSpec p = RouteSpec::parse("p:3");
  EXPECT_EQ(p.route, Route::p_shifted);
  EXPECT_EQ(p.shift, 3u);
  EXPECT_EQ(p.label(), "p:3");
  EXPECT_THROW(RouteSpec::parse("p:"), std::invalid_argument);
  EXPECT_THROW(RouteSpec::parse("p:x"), std::invalid_argument);
  EXPECT_THROW(RouteSpec::parse("gamma"), std::invalid_argument);
}

TEST(Pipelines, A0FormsAgreeWithReference) {
  const A0Forms f = a0_forms(kTight);
  expect_matches_reference(f.b_form);
  expect_matches_reference(f.theta_form);
  EXPECT_LE(abs(f.gaussian_piece - parse_real("0.9878111178151971131076117033329744826814")), f.gaussian_bound);
  expect_matches_reference(a0_via_theta(kTight));
}

TEST(Pipelines, DefaultToleranceRecords) {
  for (unsigned k = 1; k <= 3; ++k) {
    for (const char* route : {"theta", "L", "p:1", "p:2", "p:3"}) {
      const CoefficientRecord r = compute_coefficient(k, RouteSpec::parse(route), Real(kDefaultTol));
      EXPECT_EQ(r.k, k);
      EXPECT_EQ(r.route_label(), route);
      EXPECT_LE(r.abs_error_bound, Real(kDefaultTol));
      expect_matches_reference(r);
    }
  }
  EXPECT_EQ(compute_coefficient(0, RouteSpec::parse("L"), Real(kDefaultTol)).k, 0u);
}

TEST(Pipelines, TightRoutesMatchReference) {
  for (unsigned k = 1; k <= 6; ++k) {
    expect_matches_reference(ak_via_theta(k, kTight));
    expect_matches_reference(ak_via_L(k, kTight));
    for (unsigned n = 1; n <= 3; ++n) expect_matches_reference(ak_via_p(k, n, kTight));
  }
}

TEST(Pipelines, ErrorPaths) {
  EXPECT_THROW(ak_via_theta(0, kTight), std::domain_error);
  EXPECT_THROW(ak_via_L(1, Real(0)), std::domain_error);
  EXPECT_THROW(ak_via_p(0, 1, kTight), std::domain_error);
  EXPECT_THROW(verify_each_n(0, 0, kTight), std::domain_error);
  EXPECT_THROW(verify_each_n(1, 3, kTight), std::domain_error);
  EXPECT_THROW(verify_int_by_parts(Real(0), 1, 1, kTight), std::domain_error);
  EXPECT_THROW(verify_antiderivative(Real(1), 1, Real(2), Real(1)), std::domain_error);
}

TEST(Pipelines, EachNChangeOfVariables) {
  for (unsigned n = 1; n <= 3; ++n) {
    for (unsigned tk = 0; tk <= 4; tk += 2) {
      const IdentityCheck c = verify_each_n(n, tk, Real(1e-12));
      EXPECT_TRUE(c.within_bound()) << "n=" << n << " 2k=" << tk << " residual " << to_decimal(c.residual, 6);
      EXPECT_GT(abs(c.lhs), 0);
    }
  }
}

TEST(Pipelines, IntegrationByParts) {
  for (int c = 1; c <= 2; ++c) {
    for (unsigned m = 0; m <= 2; ++m) {
      for (unsigned n = 0; n <= 2; ++n) {
        const IdentityCheck r = verify_int_by_parts(Real(c), m, n, Real(1e-12));
        EXPECT_TRUE(r.within_bound()) << c << " " << m << " " << n;
      }
    }
  }
}

TEST(Pipelines, Antiderivatives) {
  for (unsigned k = 0; k <= 2; ++k) {
    const IdentityCheck r = verify_antiderivative(Real(2.5), k, Real(0.5), Real(4));
    EXPECT_TRUE(r.within_bound());
    EXPECT_LE(r.residual, Real(1e-24));
  }
  EXPECT_LE(abs(antiderivative_single(Real(3), Real(3), 1) - 8 * sqrt(Real(3))), Real(1e-30));
  // Central differences reproduce the integrands.
  const Real h(1e-8), z(1.7), x(2.2);
  for (unsigned k = 0; k <= 2; ++k) {
    const Real lg = log(z / x);
    const Real f = ipow(lg, 2 * k) * inv_factorial(2 * k) / sqrt(z);
    const Real d = (antiderivative_single(z + h, x, k) - antiderivative_single(z - h, x, k)) / (2 * h);
    EXPECT_LE(abs(d - f), Real(1e-14));
    const Real g = f - ipow(lg, 2 * k + 2) * inv_factorial(2 * k + 2) / (4 * sqrt(z));
    const Real e = (antiderivative_pair(z + h, x, k) - antiderivative_pair(z - h, x, k)) / (2 * h);
    EXPECT_LE(abs(e - g), Real(1e-14));
  }
}

TEST(Pipelines, Wallis) {
  EXPECT_EQ(wallis(0).value, Rational(1));
  EXPECT_EQ(wallis(1).value, Rational(4, 3));
  EXPECT_EQ(wallis(2).value, Rational(64, 45));
  Rational prev = wallis(0).value;
  for (unsigned N = 1; N <= 60; ++N) {
    const Rational w = wallis(N).value;
    EXPECT_GT(w, prev);
    EXPECT_LT(to_real(w), pi() / 2);
    prev = w;
  }
  const Real gap = pi() / 2 - to_real(wallis(1000).value);
  EXPECT_GT(gap, 0);
  EXPECT_LT(gap, Real(5e-4));
}

TEST(Pipelines, ProofConstant) {
  const ProofConstant pc = proof_constant();
  EXPECT_EQ(pc.computed, Rational(65, 9));
  EXPECT_EQ(pc.printed, Rational(55, 9));
  EXPECT_TRUE(pc.erratum);
  EXPECT_TRUE(pc.exceeds_five);
}

TEST(Pipelines, MonotonicityReport) {
  const MonotonicityReport rep = monotonicity_report(4, kTight);
  ASSERT_EQ(rep.coefficients.size(), 6u);
  ASSERT_EQ(rep.entries.size(), 5u);
  for (const auto& e : rep.entries) EXPECT_TRUE(e.ok()) << e.k;
  for (const auto& c : rep.coefficients) expect_matches_reference(c);
  EXPECT_GT(rep.exp_margin_min, 0);
  EXPECT_THROW(monotonicity_report(0, kTight), std::domain_error);
}
