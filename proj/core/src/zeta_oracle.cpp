#include "xitaylor/zeta_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xitaylor {

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  const Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = r;
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  // Smith's algorithm.
  if (abs(o.re) >= abs(o.im)) {
    const Real q = o.im / o.re;
    const Real d = o.re + o.im * q;
    const Real r = (re + im * q) / d;
    im = (im - re * q) / d;
    re = r;
  } else {
    const Real q = o.re / o.im;
    const Real d = o.re * q + o.im;
    const Real r = (re * q + im) / d;
    im = (im * q - re) / d;
    re = r;
  }
  return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }

Real cabs(const Complex& z) { return hypot(z.re, z.im); }

Complex cexp(const Complex& z) {
  const Real m = exp(z.re);
  return Complex(m * cos(z.im), m * sin(z.im));
}

Complex clog(const Complex& z) { return Complex(log(cabs(z)), atan2(z.im, z.re)); }

namespace {

constexpr unsigned kMaxBernoulli = 60;  // B_0 .. B_120

const std::vector<Rational>& bernoulli_even_table() {
  static const std::vector<Rational> table = [] {
    // B_m from sum_{i=0}^{m} C(m+1, i) B_i = 0.
    const unsigned top = 2 * kMaxBernoulli;
    std::vector<Rational> b(top + 1);
    b[0] = 1;
    for (unsigned m = 1; m <= top; ++m) {
      if (m > 1 && m % 2 == 1) {
        b[m] = 0;
        continue;
      }
      Rational s = 0;
      BigInt c = 1;  // C(m+1, i)
      for (unsigned i = 0; i < m; ++i) {
        s += Rational(c) * b[i];
        c = c * (m + 1 - i) / (i + 1);
      }
      b[m] = -s / Rational(m + 1);
    }
    std::vector<Rational> even;
    for (unsigned j = 0; j <= kMaxBernoulli; ++j) even.push_back(b[2 * j]);
    return even;
  }();
  return table;
}

const std::vector<Real>& bernoulli_even_real() {
  static const std::vector<Real> table = [] {
    std::vector<Real> t;
    for (const auto& r : bernoulli_even_table()) t.push_back(to_real(r));
    return t;
  }();
  return table;
}

Complex real_pow(const Real& base, const Complex& exponent) {
  // base^exponent for base > 0.
  return cexp(exponent * Complex(log(base)));
}

// Householder least squares: minimises ||A x - y||, A is rows x cols (rows >= cols).
std::vector<Real> least_squares(std::vector<std::vector<Real>> A, std::vector<Real> y) {
  const std::size_t rows = A.size();
  const std::size_t cols = A.front().size();
  for (std::size_t j = 0; j < cols; ++j) {
    Real norm = 0;
    for (std::size_t i = j; i < rows; ++i) norm += A[i][j] * A[i][j];
    norm = sqrt(norm);
    if (norm == 0) throw std::runtime_error("least_squares: rank deficient");
    const Real alpha = A[j][j] > 0 ? -norm : norm;
    std::vector<Real> v(rows, Real(0));
    for (std::size_t i = j; i < rows; ++i) v[i] = A[i][j];
    v[j] -= alpha;
    Real vnorm2 = 0;
    for (std::size_t i = j; i < rows; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0) continue;
    for (std::size_t c = j; c < cols; ++c) {
      Real dot = 0;
      for (std::size_t i = j; i < rows; ++i) dot += v[i] * A[i][c];
      const Real f = 2 * dot / vnorm2;
      for (std::size_t i = j; i < rows; ++i) A[i][c] -= f * v[i];
    }
    Real dot = 0;
    for (std::size_t i = j; i < rows; ++i) dot += v[i] * y[i];
    const Real f = 2 * dot / vnorm2;
    for (std::size_t i = j; i < rows; ++i) y[i] -= f * v[i];
  }
  std::vector<Real> x(cols);
  for (std::size_t j = cols; j-- > 0;) {
    Real s = y[j];
    for (std::size_t c = j + 1; c < cols; ++c) s -= A[j][c] * x[c];
    x[j] = s / A[j][j];
  }
  return x;
}

struct FitOutcome {
  std::vector<Real> a;          // a_k for k = 0..J
  std::vector<Real> amplification;  // sum_i |pinv_{k,i}| / h^{2k}
  Real max_residual = 0;
  Real max_value_error = 0;
};

FitOutcome fit_even(unsigned J, const Real& h, const Real& tol) {
  const unsigned cols = J + 1;
  const unsigned rows = 2 * cols;
  const unsigned total = 2 * rows;  // symmetric Chebyshev set on [-h, h]
  std::vector<std::vector<Real>> A(rows, std::vector<Real>(cols));
  std::vector<Real> y(rows);
  FitOutcome out;
  for (unsigned i = 0; i < rows; ++i) {
    const Real t = h * cos(pi() * (2 * i + 1) / (2 * Real(total)));
    const Real v = (t / h) * (t / h);
    Real p = 1;
    for (unsigned j = 0; j < cols; ++j) {
      A[i][j] = p;
      p *= v;
    }
    const XiValue xv = xi_critical(t, tol);
    y[i] = xv.value;
    out.max_value_error = std::max(out.max_value_error, xv.est_error);
  }
  const std::vector<Real> c = least_squares(A, y);
  for (unsigned i = 0; i < rows; ++i) {
    Real fit = 0;
    for (unsigned j = 0; j < cols; ++j) fit += A[i][j] * c[j];
    out.max_residual = std::max(out.max_residual, abs(fit - y[i]));
  }
  std::vector<Real> amp(cols, Real(0));
  for (unsigned i = 0; i < rows; ++i) {
    std::vector<Real> e(rows, Real(0));
    e[i] = 1;
    const std::vector<Real> col = least_squares(A, e);
    for (unsigned j = 0; j < cols; ++j) amp[j] += abs(col[j]);
  }
  for (unsigned k = 0; k < cols; ++k) {
    const Real scale = ipow(h, 2 * k);
    const Real sign = k % 2 == 0 ? Real(1) : Real(-1);
    out.a.push_back(sign * c[k] / scale);
    out.amplification.push_back(amp[k] / scale);
  }
  return out;
}

}  // namespace

Rational bernoulli_2j(unsigned j) {
  if (j > kMaxBernoulli) throw std::domain_error("bernoulli_2j: index too large");
  return bernoulli_even_table()[j];
}

ComplexEstimate zeta_em(const Real& sigma, const Real& t, const Real& tol) {
  if (sigma == 1 && t == 0) throw std::domain_error("zeta_em: pole at s = 1");
  if (!(tol > 0)) throw std::domain_error("zeta_em: tol must be > 0");
  const Complex s(sigma, t);
  const unsigned N = 30 + static_cast<unsigned>(ceil(abs(t))) + static_cast<unsigned>(ceil(abs(sigma)));
  const Real rN(N);

  Complex sum;
  Real abs_sum = 0;
  for (unsigned n = 1; n < N; ++n) {
    const Complex term = real_pow(Real(n), -s);
    sum += term;
    abs_sum += cabs(term);
  }
  const Complex nms = real_pow(rN, -s);  // N^{-s}
  sum += nms * Complex(rN) / (s - Complex(1));
  sum += nms * Complex(Real(0.5));

  const auto& bern = bernoulli_even_real();
  // T_j = B_{2j}/(2j)! * s (s+1) ... (s+2j-2) * N^{-s-2j+1}
  Complex rising = s;             // s (s+1) ... (s+2j-2), starting at j = 1
  Complex npow = nms / Complex(rN);  // N^{-s-1}
  Real remainder = std::numeric_limits<Real>::infinity();
  for (unsigned j = 1; j < kMaxBernoulli; ++j) {
    const Complex term = Complex(bern[j] * inv_factorial(2 * j)) * rising * npow;
    const Real mag = cabs(term);
    sum += term;
    abs_sum += mag;
    // Next term and the standard remainder factor |s + 2j + 1| / (sigma + 2j + 1).
    rising *= (s + Complex(Real(2 * j - 1))) * (s + Complex(Real(2 * j)));
    npow /= Complex(rN * rN);
    const Complex next = Complex(bern[j + 1] * inv_factorial(2 * j + 2)) * rising * npow;
    const Real denom = sigma + 2 * j + 1;
    const Real factor = denom > 0 ? cabs(s + Complex(Real(2 * j + 1))) / denom : Real(1);
    remainder = cabs(next) * factor;
    if (remainder <= tol * std::max(Real(1e-300), cabs(sum)) || remainder == 0) break;
  }
  const Real rounding = 16 * N * epsilon() * abs_sum;
  return ComplexEstimate{sum, remainder + rounding};
}

ComplexEstimate gamma_half(const Complex& z, const Real& tol) {
  if (z.im == 0 && z.re <= 0 && z.re == floor(z.re)) {
    throw std::domain_error("gamma_half: pole at non-positive integer");
  }
  if (!(tol > 0)) throw std::domain_error("gamma_half: tol must be > 0");
  Complex w = z;
  Complex shift_product(1);
  unsigned shifts = 0;
  while (w.re < 24) {
    shift_product *= w;
    w += Complex(1);
    ++shifts;
  }
  const auto& bern = bernoulli_even_real();
  Complex lg = (w - Complex(Real(0.5))) * clog(w) - w + Complex(log(2 * pi()) / 2);
  const Complex w2 = w * w;
  Complex wpow = w;  // w^{2j-1}
  Real remainder = 0;
  for (unsigned j = 1; j < kMaxBernoulli; ++j) {
    const Complex term = Complex(bern[j] / (Real(2 * j) * Real(2 * j - 1))) / wpow;
    lg += term;
    wpow *= w2;
    const Complex next = Complex(bern[j + 1] / (Real(2 * j + 2) * Real(2 * j + 1))) / wpow;
    remainder = 2 * cabs(next);
    if (remainder <= tol) break;
  }
  const Complex value = cexp(lg) / shift_product;
  const Real rel = remainder + (4 * shifts + 64) * epsilon();
  return ComplexEstimate{value, cabs(value) * rel};
}

ComplexEstimate completed_zeta(const Complex& s, const Real& tol) {
  const ComplexEstimate z = zeta_em(s.re, s.im, tol);
  const ComplexEstimate g = gamma_half(s * Complex(Real(0.5)), tol);
  const Complex pw = real_pow(pi(), -(s * Complex(Real(0.5))));
  const Complex value = pw * g.value * z.value;
  const Real rel = z.error / cabs(z.value) + g.error / cabs(g.value) + 32 * epsilon();
  return ComplexEstimate{value, cabs(value) * rel};
}

XiValue xi_critical(const Real& t, const Real& tol) {
  const Complex s(Real(0.5), t);
  const ComplexEstimate lam = completed_zeta(s, tol);
  const Complex xi = -(s * (Complex(1) - s)) * lam.value;
  const Real mag = cabs(xi);
  const Real err = mag * (lam.error / cabs(lam.value) + 8 * epsilon());
  return XiValue{t, xi.re, err, abs(xi.im)};
}

XiValue a0_closed_form(const Real& tol) {
  const ComplexEstimate z = zeta_em(Real(0.5), Real(0), tol);
  const ComplexEstimate g = gamma_half(Complex(Real(0.25)), tol);
  const Real value = -pow(pi(), Real(-0.25)) * g.value.re * z.value.re / 4;
  const Real err = abs(value) * (z.error / cabs(z.value) + g.error / cabs(g.value) + 16 * epsilon());
  return XiValue{0, value, err, 0};
}

OracleFit oracle_coefficients(unsigned kmax, const Real& tol, const Real& half_width) {
  if (kmax > 8) throw std::domain_error("oracle_coefficients: kmax must be <= 8");
  if (!(half_width > 0)) throw std::domain_error("oracle_coefficients: half width must be > 0");
  const unsigned J = kmax + 2;
  const Real xi_tol = Real(1e-32);
  const FitOutcome main = fit_even(J, half_width, xi_tol);
  const FitOutcome alt = fit_even(J + 1, half_width * Real(0.8), xi_tol);

  OracleFit out;
  out.half_width = half_width;
  out.degree = 2 * J;
  for (unsigned k = 0; k <= kmax; ++k) {
    const Real perturbation = abs(main.a[k] - alt.a[k]);
    const Real noise = (main.max_residual + main.max_value_error) * main.amplification[k];
    OracleCoefficient oc{k, main.a[k], perturbation + noise};
    if (oc.est_error > tol) out.ill_conditioned = true;
    out.coefficients.push_back(oc);
  }
  return out;
}

}  // namespace xitaylor
