// Working-precision scalar and small numeric helpers shared by every module.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/float128.hpp>

#include <stdexcept>
#include <string>

namespace xitaylor {

/// IEEE binary128 (113-bit significand, ~34 decimal digits).
using Real = boost::multiprecision::float128;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when an adaptive computation exhausts its budget before meeting tol.
class NotConverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Real pi();
Real euler_e();
Real epsilon();

/// n! exactly.
BigInt factorial_exact(unsigned n);

/// 1/n! at working precision (cached for small n).
Real inv_factorial(unsigned n);

/// base^exp by repeated squaring; exp is an exact integer, so the sign of a
/// negative base is preserved for odd exponents.
Real ipow(const Real& base, unsigned exp);

Real to_real(const BigInt& v);
Real to_real(const Rational& v);

/// Decimal string with `digits` significant digits in scientific notation.
std::string to_decimal(const Real& v, int digits = 34);

/// Parses a decimal string at working precision.
Real parse_real(const std::string& text);

}  // namespace xitaylor
