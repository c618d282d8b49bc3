// The integer polynomial family p(x; n) generated by conjugating d/dx with
// sqrt(x) e^{-pi x^2}:
//
//   p(-pi x^2; n+1) = 2 sqrt(x) e^{pi x^2} d/dx ( p(-pi x^2; n) sqrt(x) e^{-pi x^2} ),
//   p(x; 0) = 1.
//
// Coefficients are exact integers; three constructions are provided so they
// can be checked against one another.
#pragma once

#include "xitaylor/real.hpp"

#include <vector>

namespace xitaylor {

/// p(x; n) in the monomial basis. Immutable after construction.
class PPolynomial {
 public:
  PPolynomial(unsigned n, std::vector<BigInt> coeffs);

  unsigned n() const { return n_; }
  unsigned degree() const { return static_cast<unsigned>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  const BigInt& operator[](unsigned m) const { return coeffs_.at(m); }

  /// Exact derivative coefficients (degree n-1; [0] for n = 0).
  std::vector<BigInt> derivative_coeffs() const;

  friend bool operator==(const PPolynomial&, const PPolynomial&) = default;

 private:
  unsigned n_;
  std::vector<BigInt> coeffs_;
};

/// c_{m,n+1} = (4m+1) c_{m,n} + 4 c_{m-1,n}, starting from p(x;0) = 1.
PPolynomial p_by_recurrence(unsigned n);

/// c_{m,n} = (1/m!) sum_j (-1)^{j-m} C(m,j) (4j+1)^n with exact division.
/// Throws std::logic_error if a division leaves a remainder.
PPolynomial p_by_binomial(unsigned n);

/// Horner evaluation. Uses compensated Horner (error as if evaluated in twice
/// the working precision) when x < 0 and cancellation is possible.
Real p_eval(const PPolynomial& P, const Real& x);

/// Evaluates an arbitrary integer-coefficient polynomial with the same rule.
Real poly_eval(const std::vector<BigInt>& coeffs, const Real& x);

struct SeriesValue {
  Real value;
  Real remainder_bound;
  unsigned terms;
};

/// e^{-x} sum_j (4j+1)^n x^j / j!, truncated once the certified remainder
/// (already multiplied by e^{-x}) is <= tol * max(1, |value|).
/// Throws NotConverged if max_terms is reached first.
SeriesValue p_eval_exponential(unsigned n, const Real& x, const Real& tol, unsigned max_terms = 20000);

/// Coefficients of p(-pi x^2; 2)/4 - 1 in powers of (x^2 - 1).
struct P2Expansion {
  Real c0;  // -3/4 - 6 pi + 4 pi^2
  Real c1;  // -6 pi + 8 pi^2
  Real c2;  // 4 pi^2

  Real eval(const Real& x) const;
};

P2Expansion p2_expansion();

/// p(-pi x^2; 2)/4 - 1, by direct Horner evaluation.
Real p2_margin(const Real& x);

/// 4m C(m-1,k) - (4m+1) C(m,k) == -(4k+1) C(m,k), exactly. Requires 0 <= k <= m-1.
bool check_binomial_identity(unsigned m, unsigned k);

BigInt binomial_exact(unsigned m, unsigned j);

}  // namespace xitaylor
