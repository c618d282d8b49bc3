#include "xitaylor/p_polynomials.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace xitaylor {

namespace {

// Error-free transformations at working precision.
void two_sum(const Real& a, const Real& b, Real& s, Real& e) {
  s = a + b;
  const Real z = s - a;
  e = (a - (s - z)) + (b - z);
}

void two_prod(const Real& a, const Real& b, Real& p, Real& e) {
  p = a * b;
  e = fma(a, b, -p);
}

Real horner(const std::vector<Real>& c, const Real& x) {
  Real acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Graillat-Langlois-Louvet compensated Horner.
Real compensated_horner(const std::vector<Real>& c, const Real& x) {
  Real s = c.back();
  Real comp = 0;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    Real p, pe, se;
    two_prod(s, x, p, pe);
    two_sum(p, c[i], s, se);
    comp = comp * x + (pe + se);
  }
  return s + comp;
}

}  // namespace

PPolynomial::PPolynomial(unsigned n, std::vector<BigInt> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != n_ + 1) {
    throw std::invalid_argument("PPolynomial: expected n+1 coefficients");
  }
}

std::vector<BigInt> PPolynomial::derivative_coeffs() const {
  if (n_ == 0) return {BigInt(0)};
  std::vector<BigInt> d(n_);
  for (unsigned m = 1; m <= n_; ++m) d[m - 1] = coeffs_[m] * m;
  return d;
}

BigInt binomial_exact(unsigned m, unsigned j) {
  if (j > m) return 0;
  BigInt c = 1;
  for (unsigned i = 1; i <= j; ++i) {
    c *= m - j + i;
    c /= i;
  }
  return c;
}

PPolynomial p_by_recurrence(unsigned n) {
  std::vector<BigInt> c{BigInt(1)};
  for (unsigned step = 0; step < n; ++step) {
    std::vector<BigInt> next(c.size() + 1);
    for (unsigned m = 0; m < next.size(); ++m) {
      BigInt v = 0;
      if (m < c.size()) v += c[m] * (4 * m + 1);
      if (m >= 1) v += c[m - 1] * 4;
      next[m] = std::move(v);
    }
    c = std::move(next);
  }
  return PPolynomial(n, std::move(c));
}

PPolynomial p_by_binomial(unsigned n) {
  std::vector<BigInt> c(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    BigInt sum = 0;
    for (unsigned j = 0; j <= m; ++j) {
      BigInt term = binomial_exact(m, j) * boost::multiprecision::pow(BigInt(4 * j + 1), n);
      if ((m - j) % 2 == 0) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    const BigInt mf = factorial_exact(m);
    if (sum % mf != 0) {
      throw std::logic_error("p_by_binomial: finite-difference sum for m=" + std::to_string(m) +
                             ", n=" + std::to_string(n) + " is not divisible by m!");
    }
    c[m] = sum / mf;
  }
  return PPolynomial(n, std::move(c));
}

Real poly_eval(const std::vector<BigInt>& coeffs, const Real& x) {
  std::vector<Real> c;
  c.reserve(coeffs.size());
  for (const auto& v : coeffs) c.push_back(to_real(v));
  if (x < 0 && c.size() > 1) return compensated_horner(c, x);
  return horner(c, x);
}

Real p_eval(const PPolynomial& P, const Real& x) { return poly_eval(P.coeffs(), x); }

SeriesValue p_eval_exponential(unsigned n, const Real& x, const Real& tol, unsigned max_terms) {
  if (!(tol > 0)) throw std::domain_error("p_eval_exponential: tol must be > 0");
  const Real ax = abs(x);
  const Real scale = exp(-x);
  Real sum = 0;
  Real power_over_fact = 1;  // x^j / j!
  for (unsigned j = 0; j < max_terms; ++j) {
    sum += ipow(Real(4 * j + 1), n) * power_over_fact;
    power_over_fact *= x / (j + 1);
    // Ratio of |term_{i+1}| / |term_i| is non-increasing in i, so once it
    // drops below 1 the tail is dominated by a geometric series.
    const unsigned i = j + 1;
    const Real next_abs = ipow(Real(4 * i + 1), n) * abs(power_over_fact);
    const Real ratio = ipow(Real(4 * i + 5) / Real(4 * i + 1), n) * ax / (i + 1);
    if (ratio < 1) {
      const Real remainder = scale * next_abs / (1 - ratio);
      const Real value = scale * sum;
      if (remainder <= tol * std::max(Real(1), abs(value))) {
        return SeriesValue{value, remainder, i};
      }
    }
  }
  throw NotConverged("p_eval_exponential: remainder bound not met within " + std::to_string(max_terms) +
                     " terms");
}

Real P2Expansion::eval(const Real& x) const {
  const Real u = x * x - 1;
  return c0 + c1 * u + c2 * u * u;
}

P2Expansion p2_expansion() {
  const Real p = pi();
  return P2Expansion{Real(-3) / 4 - 6 * p + 4 * p * p, -6 * p + 8 * p * p, 4 * p * p};
}

Real p2_margin(const Real& x) {
  static const PPolynomial p2 = p_by_recurrence(2);
  return p_eval(p2, -pi() * x * x) / 4 - 1;
}

bool check_binomial_identity(unsigned m, unsigned k) {
  if (m == 0 || k > m - 1) throw std::domain_error("check_binomial_identity: need 0 <= k <= m-1");
  const BigInt lhs = BigInt(4 * m) * binomial_exact(m - 1, k) - BigInt(4 * m + 1) * binomial_exact(m, k);
  const BigInt rhs = -BigInt(4 * k + 1) * binomial_exact(m, k);
  return lhs == rhs;
}

}  // namespace xitaylor
