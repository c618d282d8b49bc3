#include "xitaylor/p_polynomials.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace xitaylor;

namespace {

// Rows obtained symbolically from f -> f + 2x f' - 4 pi x^2 f, read in powers of -pi x^2.
const std::vector<std::vector<long long>> kRows{
    {1},
    {1, 4},
    {1, 24, 16},
    {1, 124, 240, 64},
    {1, 624, 2656, 1792, 256},
    {1, 3124, 26400, 33920, 11520, 1024},
    {1, 15624, 250096, 546560, 331520, 67584, 4096},
};

std::vector<BigInt> row(unsigned n) {
  std::vector<BigInt> out;
  for (long long c : kRows[n]) out.emplace_back(c);
  return out;
}

}  // namespace

TEST(PPolynomials, RecurrenceMatchesSymbolicRows) {
  for (unsigned n = 0; n < kRows.size(); ++n) {
    const PPolynomial p = p_by_recurrence(n);
    EXPECT_EQ(p.n(), n);
    EXPECT_EQ(p.degree(), n);
    EXPECT_EQ(p.coeffs(), row(n)) << "n=" << n;
  }
}

TEST(PPolynomials, BinomialFormEqualsRecurrence) {
  for (unsigned n = 0; n <= 20; ++n) EXPECT_EQ(p_by_recurrence(n), p_by_binomial(n)) << "n=" << n;
}

TEST(PPolynomials, StructuralInvariants) {
  for (unsigned n = 0; n <= 25; ++n) {
    const PPolynomial p = p_by_recurrence(n);
    // p(0;n) = 1, leading coefficient 4^n.
    EXPECT_EQ(p[0], 1);
    EXPECT_EQ(p[n], BigInt(1) << (2 * n));
    // c_{1,n} = 5^n - 1.
    if (n >= 1) EXPECT_EQ(p[1], boost::multiprecision::pow(BigInt(5), n) - 1);
    for (unsigned m = 0; m <= n; ++m) EXPECT_GT(p[m], 0);
  }
}

TEST(PPolynomials, DerivativeCoefficients) {
  const PPolynomial p = p_by_recurrence(3);
  const std::vector<BigInt> expected{124, 480, 192};
  EXPECT_EQ(p.derivative_coeffs(), expected);
  EXPECT_EQ(p_by_recurrence(0).derivative_coeffs(), std::vector<BigInt>{0});
}

TEST(PPolynomials, ConstructorRejectsWrongLength) {
  EXPECT_THROW(PPolynomial(2, {1, 2}), std::invalid_argument);
}

TEST(PPolynomials, EvaluationReferenceValues) {
  EXPECT_EQ(p_eval(p_by_recurrence(5), Real(-10)), Real(-18511239));
  const Real y = -pi() * Real(2.5) * Real(2.5);
  const Real ref = parse_real("82708923584.68171185236413732684060367696");
  EXPECT_LE(abs(p_eval(p_by_recurrence(6), y) - ref) / ref, Real(1e-30));
}

TEST(PPolynomials, CompensatedHornerIsAccurateUnderCancellation) {
  // Near a root of p(x;2) = 16x^2 + 24x + 1 the plain sum cancels badly.
  const Real root = (-24 + sqrt(Real(24 * 24 - 64))) / 32;
  const Real v = p_eval(p_by_recurrence(2), root);
  EXPECT_LE(abs(v), Real(1e-31));
}

TEST(PPolynomials, ExponentialSeriesAgrees) {
  for (unsigned n = 0; n <= 8; ++n) {
    const PPolynomial p = p_by_recurrence(n);
    for (const Real& x : {Real(-10), -pi(), Real(-1), Real(0), Real(0.5), Real(3), Real(10)}) {
      const SeriesValue s = p_eval_exponential(n, x, Real(1e-25));
      const Real d = p_eval(p, x);
      EXPECT_LE(abs(s.value - d), Real(1e-22) * std::max(Real(1), abs(d))) << "n=" << n << " x=" << to_decimal(x);
      EXPECT_GE(s.terms, 1u);
    }
  }
}

TEST(PPolynomials, ExponentialSeriesBudget) {
  EXPECT_THROW(p_eval_exponential(4, Real(50), Real(1e-30), 10), NotConverged);
  EXPECT_THROW(p_eval_exponential(1, Real(1), Real(0)), std::domain_error);
}

TEST(PPolynomials, P2MarginReferenceValues) {
  EXPECT_LE(abs(p2_margin(Real(1)) - parse_real("19.87886168281867504456210369982758723607")), Real(1e-30));
  EXPECT_LE(abs(p2_margin(Real(2)) - parse_real("555.5064579835639138823039827933656034393")), Real(1e-29));
  EXPECT_LE(abs(p2_margin(Real(3)) - parse_real("3027.355822659103357625392341262779812095")), Real(1e-28));
}

TEST(PPolynomials, P2ExpansionMatchesDirect) {
  const P2Expansion e = p2_expansion();
  EXPECT_GT(e.c0, 0);
  EXPECT_GT(e.c1, 0);
  EXPECT_GT(e.c2, 0);
  const Real pi2 = pi() * pi();
  EXPECT_LE(abs(e.c2 - 4 * pi2), Real(1e-30));
  EXPECT_LE(abs(e.c1 - (8 * pi2 - 6 * pi())), Real(1e-30));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 15.0);
  for (int i = 0; i < 200; ++i) {
    const Real x(dist(rng));
    const Real d = p2_margin(x);
    EXPECT_LE(abs(e.eval(x) - d), Real(1e-28) * std::max(Real(1), abs(d)));
  }
}

TEST(PPolynomials, BinomialIdentity) {
  for (unsigned m = 1; m <= 40; ++m) {
    for (unsigned k = 0; k < m; ++k) EXPECT_TRUE(check_binomial_identity(m, k));
  }
  EXPECT_THROW(check_binomial_identity(3, 3), std::domain_error);
  EXPECT_EQ(binomial_exact(10, 3), 120);
  EXPECT_EQ(binomial_exact(3, 5), 0);
}
