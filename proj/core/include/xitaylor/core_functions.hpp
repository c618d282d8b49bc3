// Pointwise evaluation of the Gaussian-free integrand factors L, B, U, V.
//
// All functions are pure and thread-safe. The log-power order is carried as
// the integer 2k ("two_kappa") so that half-integer k is representable and
// odd powers of a negative logarithm keep their sign.
#pragma once

#include "xitaylor/real.hpp"

#include <cstdint>

namespace xitaylor {

/// The L parameter, stored doubled.
struct LParam {
  unsigned two_kappa = 0;

  static LParam from_k(unsigned k) { return LParam{2 * k}; }
  bool integer_k() const { return two_kappa % 2 == 0; }
};

/// The unit window [M, M+1) that contains x.
struct WindowIndex {
  std::int64_t M = 1;

  /// Window containing x (x >= 1).
  static WindowIndex containing(const Real& x);
};

/// L(x; k) = sum_{n<=floor(x)} [ log(n/x)^{2k}/((2k)! sqrt n)
///                               - log(n/x)^{2k+2}/((2k+2)! 4 sqrt n) ].
/// Throws std::domain_error for x < 1.
Real eval_L(const Real& x, LParam p);

/// B(x) = 2 sqrt(x) - sum_{n<=floor(x)} n^{-1/2}. Throws for x < 1.
Real eval_B(const Real& x);

/// U(x; n, k). Requires x > 0 and n >= 1.
Real eval_U(const Real& x, std::int64_t n, LParam p);

/// V(x; n, k). Requires x > 0 and n >= 0.
Real eval_V(const Real& x, std::int64_t n, LParam p);

/// V(x; 0, k) in its reduced form log(x)^{2k+2}/(4 (2k+2)!) + log(x)^{2k+1}/(2k+1)!.
Real eval_V0_reduced(const Real& x, LParam p);

/// U(x; M, k) written with log(M/x), as used for the window-local positivity
/// argument. Coincides with eval_U for even two_kappa.
Real eval_U_window_form(const Real& x, std::int64_t M, LParam p);

/// L assembled from the telescoping U/V decomposition. Requires even two_kappa.
Real eval_L_decomposed(const Real& x, LParam p);

/// 2 x log(x)^{2k}; dominates |L(x;k)| for x >= e. Throws for x < e.
Real bound_L(const Real& x, unsigned k);

/// |D+ - D-|: mismatch of the forward and backward finite-difference
/// derivatives of the given order of L(.; k) at the integer M with step h.
/// Requires M >= 2, k >= 1, 1 <= order <= 2k and 0 < h < 1/4.
Real smoothness_probe(std::int64_t M, unsigned k, unsigned order, const Real& h);

/// Analytic jump of the (2k)-th derivative of L(.; k) across the integer M,
/// i.e. M^{-2k-1/2}.
Real analytic_jump(std::int64_t M, unsigned k);

}  // namespace xitaylor
