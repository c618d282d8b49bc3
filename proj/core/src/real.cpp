#include "xitaylor/real.hpp"

#include <boost/math/constants/constants.hpp>

#include <array>
#include <ios>

namespace xitaylor {

namespace {

constexpr unsigned kFactorialCache = 64;

const std::array<Real, kFactorialCache>& inv_factorial_table() {
  static const std::array<Real, kFactorialCache> table = [] {
    std::array<Real, kFactorialCache> t{};
    for (unsigned n = 0; n < kFactorialCache; ++n) {
      t[n] = Real(1) / to_real(factorial_exact(n));
    }
    return t;
  }();
  return table;
}

}  // namespace

Real pi() { return boost::math::constants::pi<Real>(); }
Real euler_e() { return boost::math::constants::e<Real>(); }
Real epsilon() { return std::numeric_limits<Real>::epsilon(); }

BigInt factorial_exact(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

Real inv_factorial(unsigned n) {
  if (n < kFactorialCache) return inv_factorial_table()[n];
  return Real(1) / to_real(factorial_exact(n));
}

Real ipow(const Real& base, unsigned exp) {
  Real result = 1;
  Real b = base;
  while (exp != 0) {
    if (exp & 1u) result *= b;
    exp >>= 1;
    if (exp != 0) b *= b;
  }
  return result;
}

Real to_real(const BigInt& v) {
  if (v == 0) return 0;
  const BigInt mag = abs(v);
  const auto bits = static_cast<long>(boost::multiprecision::msb(mag)) + 1;
  if (bits <= 8000) return v.convert_to<Real>();
  // Keep the leading 240 bits, convert, then rescale.
  const long shift = bits - 240;
  const Real head = (mag >> shift).convert_to<Real>();
  const Real r = ldexp(head, static_cast<int>(shift));
  return v < 0 ? -r : r;
}

Real to_real(const Rational& v) {
  const BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  if (num == 0) return 0;
  const long nb = static_cast<long>(boost::multiprecision::msb(abs(num)));
  const long db = static_cast<long>(boost::multiprecision::msb(den));
  // Integer quotient carrying ~240 significant bits, rounded once on conversion.
  const long k = 240 - (nb - db);
  const BigInt q = k >= 0 ? BigInt((num << k) / den) : BigInt(num / (den << -k));
  return ldexp(to_real(q), static_cast<int>(-k));
}

std::string to_decimal(const Real& v, int digits) {
  return v.str(digits, std::ios_base::scientific);
}

Real parse_real(const std::string& text) { return Real(text); }

}  // namespace xitaylor
