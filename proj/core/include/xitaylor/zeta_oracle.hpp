// Reference values of xi(1/2 + it) computed from zeta and Gamma directly
// (Euler-Maclaurin and shifted Stirling), independent of every integral route.
//
// Normalisation: xi(s) = -s (1 - s) pi^{-s/2} Gamma(s/2) zeta(s), without the
// conventional factor 1/2, so xi(1/2) is twice the commonly tabulated value.
#pragma once

#include "xitaylor/real.hpp"

#include <utility>
#include <vector>

namespace xitaylor {

struct Complex {
  Real re = 0;
  Real im = 0;

  Complex() = default;
  Complex(Real r, Real i = 0) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator-(const Complex& a);
Complex operator*(Complex a, const Complex& b);
Complex operator/(Complex a, const Complex& b);
Real cabs(const Complex& z);
Complex cexp(const Complex& z);
Complex clog(const Complex& z);  // principal branch

struct ComplexEstimate {
  Complex value;
  Real error = 0;  // absolute error estimate
};

/// Exact Bernoulli number B_{2j}.
Rational bernoulli_2j(unsigned j);

/// zeta(sigma + i t) by Euler-Maclaurin summation. Throws std::domain_error at s = 1.
ComplexEstimate zeta_em(const Real& sigma, const Real& t, const Real& tol);

/// Gamma(z) by Stirling's series after shifting Re z upward. Throws
/// std::domain_error at non-positive integers.
ComplexEstimate gamma_half(const Complex& z, const Real& tol);

/// pi^{-s/2} Gamma(s/2) zeta(s).
ComplexEstimate completed_zeta(const Complex& s, const Real& tol);

struct XiValue {
  Real t = 0;
  Real value = 0;
  Real est_error = 0;
  Real imag_residue = 0;  // |Im| of the assembled product, should be ~ 0
};

XiValue xi_critical(const Real& t, const Real& tol = Real(1e-30));

/// -(1/4) pi^{-1/4} Gamma(1/4) zeta(1/2).
XiValue a0_closed_form(const Real& tol = Real(1e-30));

struct OracleCoefficient {
  unsigned k = 0;
  Real value = 0;
  Real est_error = 0;
};

struct OracleFit {
  std::vector<OracleCoefficient> coefficients;
  bool ill_conditioned = false;
  Real half_width = Real(0.5);
  unsigned degree = 0;  // degree of the even polynomial in t
};

/// Fits an even polynomial of degree 2 kmax + 4 to xi_critical at Chebyshev
/// nodes in [-h, h] and reads off a_k = (-1)^k [t^{2k}]. kmax <= 8.
OracleFit oracle_coefficients(unsigned kmax, const Real& tol, const Real& half_width = Real(0.5));

}  // namespace xitaylor
