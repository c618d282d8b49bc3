#include "xitaylor/core_functions.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace xitaylor;

namespace {

// mpmath, 40 digits.
const Real kL_2_0 = parse_real("1.647050154446772346317456546314015917819");
const Real kL_37_1 = parse_real("0.9707797603417327530793188484772666936935");
const Real kL_95_3 = parse_real("0.1928438854467628141498089998140804274602");
const Real kB_2 = parse_real("1.121320343559642573202533086314547117854");
const Real kB_4 = parse_real("1.215542949623826711090006857393193505068");
const Real kB_725 = parse_real("1.367281397785282559478152066502105854798");

void expect_close(const Real& a, const Real& b, const Real& tol) {
  EXPECT_LE(abs(a - b), tol) << to_decimal(a) << " vs " << to_decimal(b);
}

}  // namespace

TEST(CoreFunctions, LMatchesReferenceValues) {
  expect_close(eval_L(Real(2), LParam{0}), kL_2_0, Real(1e-30));
  expect_close(eval_L(parse_real("3.7"), LParam::from_k(1)), kL_37_1, Real(1e-30));
  expect_close(eval_L(Real(9.5), LParam::from_k(3)), kL_95_3, Real(1e-30));
}

TEST(CoreFunctions, LAtOneIsBoundary) {
  // Only the n = 1 term survives and log(1/1) = 0.
  expect_close(eval_L(Real(1), LParam{0}), Real(1), Real(1e-32));
  expect_close(eval_L(Real(1), LParam{4}), Real(0), Real(1e-32));
}

TEST(CoreFunctions, BMatchesReferenceValues) {
  expect_close(eval_B(Real(2)), kB_2, Real(1e-30));
  expect_close(eval_B(Real(4)), kB_4, Real(1e-30));
  expect_close(eval_B(Real(7.25)), kB_725, Real(1e-30));
  expect_close(eval_B(Real(1)), Real(1), Real(1e-32));
}

TEST(CoreFunctions, DomainErrors) {
  EXPECT_THROW(eval_L(Real(0.5), LParam{0}), std::domain_error);
  EXPECT_THROW(eval_B(Real(0.99)), std::domain_error);
  EXPECT_THROW(eval_U(Real(2), 0, LParam{0}), std::domain_error);
  EXPECT_THROW(eval_U(Real(0), 1, LParam{0}), std::domain_error);
  EXPECT_THROW(eval_V(Real(2), -1, LParam{0}), std::domain_error);
  EXPECT_THROW(bound_L(Real(2), 1), std::domain_error);
  EXPECT_THROW(eval_L_decomposed(Real(2), LParam{3}), std::domain_error);
  EXPECT_THROW(smoothness_probe(1, 1, 1, Real(1e-3)), std::domain_error);
  EXPECT_THROW(smoothness_probe(2, 1, 3, Real(1e-3)), std::domain_error);
}

TEST(CoreFunctions, WindowIndex) {
  EXPECT_EQ(WindowIndex::containing(Real(1)).M, 1);
  EXPECT_EQ(WindowIndex::containing(Real(3)).M, 3);
  EXPECT_EQ(WindowIndex::containing(Real(3.999)).M, 3);
  EXPECT_EQ(WindowIndex::containing(Real(17.5)).M, 17);
}

TEST(CoreFunctions, DecompositionMatchesDirectSum) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(1.0, 30.0);
  for (int i = 0; i < 300; ++i) {
    const Real x(dist(rng));
    for (unsigned tk = 0; tk <= 12; tk += 2) {
      const Real l = eval_L(x, LParam{tk});
      expect_close(eval_L_decomposed(x, LParam{tk}), l, Real(1e-28) * std::max(Real(1), abs(l)));
    }
  }
}

TEST(CoreFunctions, NonNegativityOnRandomPoints) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(1.0, 40.0);
  for (int i = 0; i < 500; ++i) {
    const Real x(dist(rng));
    const auto M = WindowIndex::containing(x).M;
    EXPECT_GE(eval_B(x), 0);
    for (unsigned tk = 0; tk <= 12; tk += 2) {
      const LParam p{tk};
      EXPECT_GE(eval_L(x, p), 0) << to_decimal(x);
      EXPECT_GE(eval_U(x, M, p), 0) << to_decimal(x);
      for (std::int64_t n = 1; n < M; ++n) EXPECT_GE(eval_U(x, n, p) + eval_V(x, n, p), 0);
    }
  }
}

TEST(CoreFunctions, V0ReducedForm) {
  for (double xd : {1.0, 1.5, 2.0, 5.5, 9.9}) {
    for (unsigned tk = 0; tk <= 8; tk += 2) {
      const Real x(xd);
      const Real r = eval_V0_reduced(x, LParam{tk});
      expect_close(eval_V(x, 0, LParam{tk}), r, Real(1e-30) * std::max(Real(1), abs(r)));
    }
  }
}

TEST(CoreFunctions, WindowFormAgreesForEvenOrder) {
  for (double xd : {2.0, 2.5, 3.25, 7.75}) {
    const Real x(xd);
    const auto M = WindowIndex::containing(x).M;
    for (unsigned tk = 0; tk <= 6; tk += 2) {
      expect_close(eval_U_window_form(x, M, LParam{tk}), eval_U(x, M, LParam{tk}), Real(1e-30));
    }
  }
}

TEST(CoreFunctions, GrowthBound) {
  for (double xd = 2.75; xd < 60; xd += 0.37) {
    const Real x(xd);
    for (unsigned k = 0; k <= 5; ++k) EXPECT_LE(abs(eval_L(x, LParam::from_k(k))), bound_L(x, k));
  }
}

TEST(CoreFunctions, SmoothnessLowerOrdersDecay) {
  for (unsigned k = 1; k <= 2; ++k) {
    for (unsigned order = 1; order < 2 * k; ++order) {
      const Real a = smoothness_probe(3, k, order, Real(1e-3));
      const Real b = smoothness_probe(3, k, order, Real(5e-4));
      EXPECT_LT(b, Real(0.6) * a + Real(1e-25)) << "k=" << k << " order=" << order;
    }
  }
}

TEST(CoreFunctions, SmoothnessTopOrderMatchesJump) {
  for (unsigned k = 1; k <= 2; ++k) {
    for (std::int64_t M = 2; M <= 6; ++M) {
      const Real jump = analytic_jump(M, k);
      EXPECT_LT(abs(smoothness_probe(M, k, 2 * k, Real(1e-4)) - jump) / jump, Real(0.05));
    }
  }
  expect_close(analytic_jump(4, 1), Real(1) / Real(32), Real(1e-32));
}
